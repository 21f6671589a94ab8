#include "incoh/channel_json.hpp"

#include <fstream>
#include <stdexcept>

namespace incoh {

nlohmann::json channel_to_json(const Channel& c) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& k : c.kraus) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < c.dim; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t col = 0; col < c.dim; ++col) {
                const Complex z = k.at(r, col);
                row.push_back({z.real(), z.imag()});
            }
            rows.push_back(std::move(row));
        }
        ops.push_back(std::move(rows));
    }
    return nlohmann::json{{"dim", c.dim}, {"kraus", std::move(ops)}};
}

Channel channel_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
        throw std::invalid_argument("channel JSON: expected object with \"dim\" and \"kraus\"");
    const auto d = j.at("dim").get<std::size_t>();
    if (d == 0) throw std::invalid_argument("channel JSON: dim must be positive");
    const auto& ops = j.at("kraus");
    if (!ops.is_array()) throw std::invalid_argument("channel JSON: \"kraus\" must be an array");

    std::vector<ComplexMatrix> kraus;
    kraus.reserve(ops.size());
    for (const auto& op : ops) {
        if (!op.is_array() || op.size() != d)
            throw std::invalid_argument("channel JSON: operator must have dim rows");
        std::vector<Complex> entries;
        entries.reserve(d * d);
        for (const auto& row : op) {
            if (!row.is_array() || row.size() != d)
                throw std::invalid_argument("channel JSON: row must have dim entries");
            for (const auto& scalar : row) {
                if (!scalar.is_array() || scalar.size() != 2)
                    throw std::invalid_argument("channel JSON: scalar must be [re, im]");
                entries.emplace_back(scalar[0].get<double>(), scalar[1].get<double>());
            }
        }
        kraus.emplace_back(d, d, std::move(entries));
    }
    return Channel(d, std::move(kraus));
}

Channel load_channel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open channel file: " + path);
    nlohmann::json j;
    in >> j;
    return channel_from_json(j);
}

void save_channel_file(const std::string& path, const Channel& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write channel file: " + path);
    out << channel_to_json(c).dump(2) << "\n";
}

}  // namespace incoh
