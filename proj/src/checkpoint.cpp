#include "swipegan/checkpoint.hpp"

#include "swipegan/error.hpp"

namespace swipegan {

nlohmann::ordered_json checkpoint_to_json(const ParamMap& params) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    nlohmann::ordered_json shapes, values;
    for (const auto& [name, m] : params) {
        shapes[name] = {m->rows, m->cols};
        values[name] = m->v;
    }
    j["shapes"] = std::move(shapes);
    j["values"] = std::move(values);
    return j;
}

void checkpoint_from_json(const nlohmann::json& j, const ParamMap& params) {
    if (!j.is_object() || !j.contains("shapes") || !j.contains("values"))
        throw ShapeError("checkpoint: missing \"shapes\" or \"values\"");
    if (j.value("version", 0) != 1)
        throw ShapeError("checkpoint: unsupported version");
    const auto& shapes = j["shapes"];
    const auto& values = j["values"];
    for (const auto& [name, m] : params) {
        if (!shapes.contains(name) || !values.contains(name))
            throw ShapeError("checkpoint: missing parameter \"" + name + "\"");
        const auto& sh = shapes[name];
        if (!sh.is_array() || sh.size() != 2 || sh[0].get<int>() != m->rows ||
            sh[1].get<int>() != m->cols)
            throw ShapeError("checkpoint: shape mismatch for \"" + name + "\": expected " +
                             std::to_string(m->rows) + "x" + std::to_string(m->cols));
        const auto& vals = values[name];
        if (!vals.is_array() || vals.size() != m->size())
            throw ShapeError("checkpoint: value count mismatch for \"" + name + "\"");
        for (std::size_t k = 0; k < m->size(); ++k) {
            const double x = vals[k].get<double>();
            if (!std::isfinite(x)) throw ShapeError("checkpoint: non-finite value in \"" + name + "\"");
            m->v[k] = x;
        }
    }
}

}  // namespace swipegan
