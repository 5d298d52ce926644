#ifndef OPINT_MATRIX_IO_HPP
#define OPINT_MATRIX_IO_HPP

#include <json.hpp>

#include "errors.hpp"
#include "linalg.hpp"

namespace opint {

/// Matrix wire format: {"rows": n, "cols": m, "re": [...], "im": [...]},
/// row-major, both arrays of length n*m.
inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(m.entries().size());
    im.reserve(m.entries().size());
    for (const cplx& z : m.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        const auto rows = j.at("rows").get<std::size_t>();
        const auto cols = j.at("cols").get<std::size_t>();
        const auto re = j.at("re").get<std::vector<double>>();
        const auto im = j.at("im").get<std::vector<double>>();
        if (re.size() != rows * cols || im.size() != rows * cols)
            throw ConfigError("matrix arrays do not match rows*cols");
        std::vector<cplx> entries(rows * cols);
        for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = cplx(re[k], im[k]);
        return ComplexMatrix(rows, cols, std::move(entries));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad matrix file: ") + e.what());
    }
}

} // namespace opint

#endif
