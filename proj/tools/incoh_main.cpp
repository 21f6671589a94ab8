// Command-line front end: channel classification, Choi rank, canonical
// reductions, conversion feasibility and synthesis, region CSV output.
//
// Exit codes: 0 success / positive verdict, 1 negative verdict from a check
// command, 2 input or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "incoh/bloch.hpp"
#include "incoh/channel.hpp"
#include "incoh/channel_json.hpp"
#include "incoh/convert.hpp"
#include "incoh/gibbs.hpp"
#include "incoh/oracle.hpp"
#include "incoh/reduction.hpp"

using nlohmann::json;
using namespace incoh;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

BlochVector parse_bloch(const std::string& text) {
    std::stringstream ss(text);
    std::string part;
    double v[3];
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, part, ',')) throw std::invalid_argument("expected x,y,z: " + text);
        std::size_t used = 0;
        v[i] = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument("bad coordinate: " + part);
    }
    if (std::getline(ss, part, ',')) throw std::invalid_argument("expected exactly 3 coordinates");
    BlochVector b{v[0], v[1], v[2]};
    if (!b.is_valid(1e-9)) throw std::invalid_argument("Bloch vector has norm > 1: " + text);
    return b;
}

const char* class_name(ChannelClass c) {
    switch (c) {
        case ChannelClass::SIO: return "SIO";
        case ChannelClass::IO: return "IO";
        case ChannelClass::MIO: return "MIO";
        default: return "General";
    }
}

const char* class_name(OperatorClass c) {
    switch (c) {
        case OperatorClass::StrictlyIncoherent: return "StrictlyIncoherent";
        case OperatorClass::Incoherent: return "Incoherent";
        default: return "General";
    }
}

void emit_csv(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << body;
}

json bloch_json(const BlochVector& v) { return json::array({v.x, v.y, v.z}); }

struct Options {
    std::string file, out, mode = "io";
    std::string r_text, s_text;
    double t_z = 0.0;
    double tol = 1e-9;
    double theta = -1.0;
    std::size_t n = 0;
    std::size_t d = 2;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool as_json = false;
};

int cmd_classify(const Options& opt) {
    const Channel c = load_channel_file(opt.file);
    const ChannelClass cls = classify_channel(c, opt.tol);
    if (opt.as_json) {
        json ops = json::array();
        for (const auto& k : c.kraus) ops.push_back(class_name(classify_operator(k, opt.tol)));
        std::cout << json{{"class", class_name(cls)}, {"operators", ops}}.dump() << "\n";
    } else {
        std::cout << "class " << class_name(cls) << "\n";
    }
    return kExitOk;
}

int cmd_choi(const Options& opt) {
    const Channel c = load_channel_file(opt.file);
    const ChoiMatrix rho = choi(c);
    const int rank = numeric_rank(rho.matrix, 1e-10);
    const Complex tr = trace(rho.matrix);
    json matrix = json::array();
    for (std::size_t r = 0; r < rho.matrix.rows(); ++r) {
        json row = json::array();
        for (std::size_t col = 0; col < rho.matrix.cols(); ++col) {
            const Complex z = rho.matrix.at(r, col);
            row.push_back({z.real(), z.imag()});
        }
        matrix.push_back(std::move(row));
    }
    const json payload{{"dim", rho.dim},
                       {"trace", {tr.real(), tr.imag()}},
                       {"rank", rank},
                       {"matrix", std::move(matrix)}};
    if (!opt.out.empty()) {
        std::ofstream f(opt.out);
        if (!f) throw std::runtime_error("cannot write " + opt.out);
        f << payload.dump(2) << "\n";
    }
    if (opt.as_json) {
        std::cout << payload.dump() << "\n";
    } else {
        std::printf("dim %zu  trace %.12g  rank %d\n", rho.dim, tr.real(), rank);
    }
    return kExitOk;
}

int cmd_rank(const Options& opt) {
    const Channel c = load_channel_file(opt.file);
    const int rank = kraus_rank(c, 1e-10);
    if (opt.as_json)
        std::cout << json{{"kraus_rank", rank}}.dump() << "\n";
    else
        std::cout << "kraus_rank " << rank << "\n";
    return kExitOk;
}

int cmd_reduce(const Options& opt) {
    const Channel c = load_channel_file(opt.file);
    const bool sio = opt.mode == "sio";
    Channel reduced = c.dim == 2
                          ? (sio ? reduce_qubit_sio(c, opt.tol) : reduce_qubit_io(c, opt.tol))
                          : reduce_by_shape(c, sio ? ReductionMode::SIO : ReductionMode::IO, opt.tol);
    if (!opt.out.empty()) save_channel_file(opt.out, reduced);
    if (opt.as_json) {
        std::cout << json{{"before", c.kraus.size()},
                          {"after", reduced.kraus.size()},
                          {"channel", channel_to_json(reduced)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "operators " << c.kraus.size() << " -> " << reduced.kraus.size() << "\n";
    }
    return kExitOk;
}

int cmd_convert_check(const Options& opt) {
    const BlochVector r = parse_bloch(opt.r_text);
    const BlochVector s = parse_bloch(opt.s_text);
    const bool ok = feasible(r, s, Regime::SIO);
    const std::string violation = ok ? "" : feasibility_report(r, s);

    std::optional<bool> oracle_verdict;
    if (opt.n > 0) {
        oracle::SamplerConfig cfg{opt.seed, opt.n, std::nullopt};
        oracle_verdict = oracle::brute_force_feasible(r, s, cfg, 1e-6);
    }

    if (opt.as_json) {
        json payload{{"feasible", ok}};
        if (!ok) payload["violation"] = violation;
        if (oracle_verdict) payload["oracle_reachable"] = *oracle_verdict;
        std::cout << payload.dump() << "\n";
    } else {
        std::cout << (ok ? "feasible" : "infeasible: " + violation) << "\n";
        if (oracle_verdict)
            std::cout << "oracle " << (*oracle_verdict ? "reachable" : "not reached") << "\n";
    }
    return ok ? kExitOk : kExitNegative;
}

int cmd_convert_build(const Options& opt) {
    const BlochVector r = parse_bloch(opt.r_text);
    Channel c(2, {ComplexMatrix::identity(2)});
    BlochVector target{};
    if (opt.theta >= 0.0) {
        c = boundary_channel(r, opt.theta);
        const BoundaryPoint bp = boundary_point(r, opt.theta);
        target = BlochVector{bp.s_perp, 0.0, bp.s_z};
    } else {
        target = parse_bloch(opt.s_text);
        if (!feasible(r, target, Regime::SIO)) {
            std::cerr << "infeasible: " << feasibility_report(r, target) << "\n";
            return kExitNegative;
        }
        c = construct_channel(r, target);
    }
    const BlochVector achieved = bloch_from_density(apply(c, density_from_bloch(r)));
    if (!opt.out.empty()) save_channel_file(opt.out, c);
    if (opt.as_json) {
        std::cout << json{{"channel", channel_to_json(c)},
                          {"target", bloch_json(target)},
                          {"achieved", bloch_json(achieved)}}
                         .dump()
                  << "\n";
    } else {
        std::printf("operators %zu  achieved %.12g,%.12g,%.12g\n", c.kraus.size(), achieved.x,
                    achieved.y, achieved.z);
    }
    return kExitOk;
}

int cmd_region(const Options& opt) {
    const BlochVector r = parse_bloch(opt.r_text);
    const auto table = region_table(r, opt.n >= 2 ? opt.n : 100);
    if (opt.as_json) {
        json rows = json::array();
        for (const auto& row : table) rows.push_back({row.theta, row.s_perp, row.s_z});
        std::cout << json{{"rows", std::move(rows)}}.dump() << "\n";
        return kExitOk;
    }
    std::ostringstream body;
    write_region_csv(body, table);
    emit_csv(opt.out, body.str());
    return kExitOk;
}

int cmd_gibbs_region(const Options& opt) {
    const BlochVector r = parse_bloch(opt.r_text);
    const double t_z = opt.t_z;
    const auto table = gibbs_region_table(r, t_z, opt.n >= 2 ? opt.n : 100);
    if (opt.as_json) {
        json rows = json::array();
        for (const auto& row : table) rows.push_back({row.s_z, row.s_perp_max});
        std::cout << json{{"rows", std::move(rows)}}.dump() << "\n";
        return kExitOk;
    }
    std::ostringstream body;
    write_gibbs_region_csv(body, table);
    emit_csv(opt.out, body.str());
    return kExitOk;
}

int cmd_gibbs_check(const Options& opt) {
    const BlochVector r = parse_bloch(opt.r_text);
    const BlochVector s = parse_bloch(opt.s_text);
    const double t_z = opt.t_z;
    const bool ok = gibbs_feasible(r, t_z, s);
    const auto [lo, hi] = sz_range(r, t_z);
    if (opt.as_json) {
        std::cout << json{{"feasible", ok}, {"s_z_range", {lo, hi}}}.dump() << "\n";
    } else {
        std::cout << (ok ? "feasible" : "infeasible") << "  s_z range [" << lo << ", " << hi
                  << "]\n";
    }
    return ok ? kExitOk : kExitNegative;
}

int cmd_lowerbound(const Options& opt) {
    const Channel c = permutation_lower_bound_channel(opt.d);
    const int rank = kraus_rank(c, 1e-10);
    const ChannelClass cls = classify_channel(c, 1e-9);
    if (opt.as_json) {
        std::cout << json{{"d", opt.d},
                          {"operators", c.kraus.size()},
                          {"kraus_rank", rank},
                          {"class", class_name(cls)}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "d " << opt.d << "  operators " << c.kraus.size() << "  kraus_rank " << rank
                  << "  class " << class_name(cls) << "\n";
    }
    return kExitOk;
}

int cmd_bounds(const Options& opt) {
    const auto io = io_kraus_bound(opt.d);
    const auto sio = sio_kraus_bound(opt.d);
    if (opt.as_json) {
        std::cout << json{{"d", opt.d}, {"io", io}, {"sio", sio}}.dump() << "\n";
    } else {
        std::cout << "IO " << io << "\nSIO " << sio << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"incoh - incoherent-operations toolkit"};
    app.require_subcommand(1);

    Options opt;
    int rc = kExitOk;
    auto wire = [&](CLI::App* sub, int (*fn)(const Options&)) {
        sub->add_option("--tol", opt.tol, "numerical tolerance")->capture_default_str();
        sub->add_option("--threads", opt.threads, "worker threads (outputs are identical)");
        sub->add_flag("--json", opt.as_json, "machine-readable output");
        sub->callback([&opt, &rc, fn]() { rc = fn(opt); });
        return sub;
    };

    auto* classify = wire(app.add_subcommand("classify", "classify a channel file"), cmd_classify);
    classify->add_option("--file", opt.file, "channel JSON file")->required();

    auto* choi_cmd = wire(app.add_subcommand("choi", "Choi matrix of a channel file"), cmd_choi);
    choi_cmd->add_option("--file", opt.file)->required();
    choi_cmd->add_option("--out", opt.out, "write Choi JSON here");

    auto* rank = wire(app.add_subcommand("rank", "Kraus rank (Choi rank)"), cmd_rank);
    rank->add_option("--file", opt.file)->required();

    auto* reduce = wire(app.add_subcommand("reduce", "minimal incoherent decomposition"), cmd_reduce);
    reduce->add_option("--file", opt.file)->required();
    reduce->add_option("--mode", opt.mode, "io|sio")->check(CLI::IsMember({"io", "sio"}));
    reduce->add_option("--out", opt.out, "write reduced channel here");

    auto* cc = wire(app.add_subcommand("convert-check", "conversion feasibility"), cmd_convert_check);
    cc->add_option("--r", opt.r_text, "initial Bloch vector x,y,z")->required();
    cc->add_option("--s", opt.s_text, "target Bloch vector x,y,z")->required();
    cc->add_option("--n", opt.n, "also cross-check with n sampled channels");
    cc->add_option("--seed", opt.seed, "sampler seed");

    auto* cb = wire(app.add_subcommand("convert-build", "synthesize a converting channel"),
                    cmd_convert_build);
    cb->add_option("--r", opt.r_text)->required();
    cb->add_option("--s", opt.s_text, "target Bloch vector");
    cb->add_option("--theta", opt.theta, "emit the boundary channel at this angle instead");
    cb->add_option("--out", opt.out, "write channel JSON here");

    auto* region = wire(app.add_subcommand("region", "achievable-region boundary CSV"), cmd_region);
    region->add_option("--r", opt.r_text)->required();
    region->add_option("--n", opt.n, "sample count")->capture_default_str();
    region->add_option("--out", opt.out, "CSV path (stdout otherwise)");

    auto* gr = wire(app.add_subcommand("gibbs-region", "Gibbs-preserving region CSV"),
                    cmd_gibbs_region);
    gr->add_option("--r", opt.r_text)->required();
    gr->add_option("--t", opt.t_z, "preserved state z component")->required();
    gr->add_option("--n", opt.n);
    gr->add_option("--out", opt.out);

    auto* gc = wire(app.add_subcommand("gibbs-check", "Gibbs-preserving feasibility"),
                    cmd_gibbs_check);
    gc->add_option("--r", opt.r_text)->required();
    gc->add_option("--s", opt.s_text)->required();
    gc->add_option("--t", opt.t_z)->required();

    auto* lb = wire(app.add_subcommand("lowerbound", "d^2-operator witness channel"),
                    cmd_lowerbound);
    lb->add_option("--d", opt.d, "dimension")->capture_default_str();

    auto* bounds = wire(app.add_subcommand("bounds", "IO/SIO Kraus-rank bounds"), cmd_bounds);
    bounds->add_option("--d", opt.d, "dimension")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return rc;
}
