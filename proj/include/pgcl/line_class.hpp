#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <pgcl/bitset.hpp>
#include <pgcl/geometry.hpp>

namespace pgcl {

// A set of lines of one geometry, held as a membership mask over the
// canonical line indices. Immutable by convention after construction.
class LineClass {
public:
    LineClass() = default;
    LineClass(const Geometry& g, Bitset mask) : geom_(&g), mask_(std::move(mask)) {
        if (mask_.size() != g.lines.size())
            throw std::invalid_argument("line mask size does not match the geometry");
    }
    LineClass(const Geometry& g, const std::vector<int>& lines)
        : geom_(&g), mask_(g.lines.size()) {
        for (int li : lines) {
            if (li < 0 || li >= (int)g.lines.size())
                throw std::invalid_argument("line index out of range: " + std::to_string(li));
            if (mask_.test(li))
                throw std::invalid_argument("duplicate line index: " + std::to_string(li));
            mask_.set(li);
        }
    }

    const Geometry& geometry() const { return *geom_; }
    const Bitset& mask() const { return mask_; }
    std::size_t size() const { return mask_.count(); }
    bool contains(int line) const { return mask_.test(line); }
    int chi(int line) const { return mask_.test(line) ? 1 : 0; }

    LineClass complemented() const { return LineClass(*geom_, mask_.complemented()); }

    LineClass with_flipped(int line) const {
        Bitset m = mask_;
        m.flip(line);
        return LineClass(*geom_, std::move(m));
    }

    std::vector<int> indices() const { return mask_.to_indices(); }

private:
    const Geometry* geom_ = nullptr;
    Bitset mask_;
};

// ---- file format -----------------------------------------------------
//
// {"geometry":"PG(3,4)","lines":[sorted canonical indices]}
// plus an optional "construction" provenance object written by the builder.

struct LineClassFile {
    std::string geometry;
    std::vector<int> lines;
    nlohmann::ordered_json provenance; // null when absent
};

inline LineClassFile parse_line_class_text(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed line-class file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("geometry") || !j.contains("lines"))
        throw std::invalid_argument("line-class file needs 'geometry' and 'lines'");
    LineClassFile f;
    f.geometry = j["geometry"].get<std::string>();
    for (const auto& v : j["lines"]) {
        if (!v.is_number_integer())
            throw std::invalid_argument("non-integer line index token: " + v.dump());
        f.lines.push_back(v.get<int>());
    }
    if (j.contains("construction")) f.provenance = j["construction"];
    return f;
}

inline LineClass line_class_from_file(const Geometry& g, const LineClassFile& f) {
    if (f.geometry != g.descriptor())
        throw std::invalid_argument("geometry mismatch: file says " + f.geometry +
                                    ", expected " + g.descriptor());
    return LineClass(g, f.lines);
}

inline std::string line_class_to_text(const LineClass& c,
                                      const nlohmann::ordered_json& provenance = nullptr) {
    nlohmann::ordered_json j;
    j["geometry"] = c.geometry().descriptor();
    if (!provenance.is_null()) j["construction"] = provenance;
    j["lines"] = c.indices();
    return j.dump(2) + "\n";
}

} // namespace pgcl
