#include "mlgs/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace mlgs {

namespace {

using Json = nlohmann::json;

template <class T, std::size_t N>
std::array<T, N> array_from(const Json& j) {
    if (!j.is_array() || j.size() != N) throw std::runtime_error("expected an array of " + std::to_string(N));
    std::array<T, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if constexpr (std::is_floating_point_v<T>)
            out[i] = j.at(i).is_null() ? std::numeric_limits<T>::quiet_NaN() : j.at(i).get<T>();
        else
            out[i] = j.at(i).get<T>();
    }
    return out;
}

} // namespace

Json to_json(const QueryStats& s) {
    return Json{{"blue_neighbor_queries", s.blue_neighbor_queries},
                {"red_of_blue_queries", s.red_of_blue_queries},
                {"red_of_red_queries", s.red_of_red_queries},
                {"pair_probe_queries", s.pair_probe_queries},
                {"total", s.total()}};
}

QueryStats query_stats_from_json(const Json& j) {
    QueryStats s;
    s.blue_neighbor_queries = j.at("blue_neighbor_queries");
    s.red_of_blue_queries = j.at("red_of_blue_queries");
    s.red_of_red_queries = j.at("red_of_red_queries");
    s.pair_probe_queries = j.at("pair_probe_queries");
    return s;
}

Json to_json(const ConcentrationEstimate& e) {
    return Json{{"algo", to_string(e.algo)},
                {"steps", e.steps},
                {"seed", e.seed},
                {"d_hat", e.d_hat},
                {"C_hat_weights", e.weight},
                {"degenerate_state_count", e.degenerate_states},
                {"unweighted_state_count", e.unweighted_states},
                {"query_stats", to_json(e.query_stats)}};
}

ConcentrationEstimate estimate_from_json(const Json& j) {
    ConcentrationEstimate e;
    e.algo = walk_model_from_string(j.at("algo").get<std::string>());
    e.steps = j.at("steps");
    e.seed = j.at("seed");
    e.d_hat = array_from<double, kNumGraphletTypes>(j.at("d_hat"));
    e.weight = array_from<double, kNumGraphletTypes>(j.at("C_hat_weights"));
    e.degenerate_states = j.at("degenerate_state_count");
    e.unweighted_states = j.value("unweighted_state_count", std::uint64_t{0});
    e.query_stats = query_stats_from_json(j.at("query_stats"));
    return e;
}

Json to_json(const GroundTruth& t) {
    return Json{{"counts", t.counts},
                {"total", t.total()},
                {"total_restricted", t.total_restricted()},
                {"concentrations", t.concentrations()},
                {"concentrations_restricted", t.concentrations_restricted()}};
}

GroundTruth ground_truth_from_json(const Json& j) {
    GroundTruth t;
    t.counts = array_from<std::uint64_t, kNumGraphletTypes>(j.at("counts"));
    return t;
}

Json to_json(const BoundDiagnostics& d) {
    // infinities are not representable in JSON; emit null like NaN
    auto finite_or_null = [](double v) -> Json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    Json lambda = Json::array(), hol = Json::array();
    for (int i = 0; i < kNumGraphletTypes; ++i) {
        lambda.push_back(finite_or_null(d.lambda[i]));
        hol.push_back(finite_or_null(d.h_over_lambda[i]));
    }
    return Json{{"M", d.M}, {"H", d.H}, {"alpha_min", d.alpha_min}, {"lambda", lambda}, {"h_over_lambda", hol}};
}

void write_json_file(const Json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << j.dump(2) << '\n';
    if (!f.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    Json j;
    f >> j;
    return j;
}

} // namespace mlgs
