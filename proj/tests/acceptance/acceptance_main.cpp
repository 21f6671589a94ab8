// Acceptance suite: every release criterion is exercised at its stated
// tolerance and budget, one verdict line per criterion. Exit code 0 only if
// all criteria hold.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "incoh/bloch.hpp"
#include "incoh/channel.hpp"
#include "incoh/channel_json.hpp"
#include "incoh/convert.hpp"
#include "incoh/gibbs.hpp"
#include "incoh/oracle.hpp"
#include "incoh/reduction.hpp"
#include "support/test_helpers.hpp"

using namespace incoh;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::ostringstream detail;

void note(const std::string& msg) { detail << "    " << msg << "\n"; }

bool expect(bool cond, const std::string& msg) {
    if (!cond) note("FAILED: " + msg);
    return cond;
}

void verdict(int index, const std::string& name, bool ok, double ms, double budget_ms) {
    if (budget_ms > 0 && ms > budget_ms) {
        ok = false;
        note("over budget: " + std::to_string(ms) + " ms > " + std::to_string(budget_ms) + " ms");
    }
    std::printf("[%s] criterion %d: %s (%.1f ms)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                ms);
    const std::string text = detail.str();
    if (!ok && !text.empty()) std::fputs(text.c_str(), stdout);
    detail.str("");
    if (!ok) ++failures;
}

template <typename F>
void criterion(int index, const std::string& name, double budget_ms, F body) {
    const auto start = Clock::now();
    bool ok = true;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note(std::string("exception: ") + e.what());
        ok = false;
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    verdict(index, name, ok, ms, budget_ms);
}

double bloch_distance(const BlochVector& a, const BlochVector& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                     (a.z - b.z) * (a.z - b.z));
}

std::vector<int> class_counts(const Channel& c) {
    std::vector<int> counts(c.dim, 0);
    for (const auto& op : c.kraus) {
        const int lead = operator_shape(op).leading_col();
        if (lead >= 0) ++counts[static_cast<std::size_t>(lead)];
    }
    return counts;
}

// ---------------------------------------------------------------------------

bool criterion_bound_table() {
    bool ok = true;
    ok &= expect(io_kraus_bound(2) == 5, "io_kraus_bound(2) == 5");
    ok &= expect(io_kraus_bound(3) == 39, "io_kraus_bound(3) == 39");
    ok &= expect(sio_kraus_bound(2) == 4, "sio_kraus_bound(2) == 4");
    ok &= expect(sio_kraus_bound(3) == 15, "sio_kraus_bound(3) == 15");
    ok &= expect(io_kraus_bound(4) == 257, "io_kraus_bound(4) == 257");
    ok &= expect(sio_kraus_bound(6) == 1297, "sio_kraus_bound(6) == 1297");
    return ok;
}

bool criterion_lower_bound_witness() {
    bool ok = true;
    for (std::size_t d = 2; d <= 4; ++d) {
        const Channel c = permutation_lower_bound_channel(d);
        ok &= expect(kraus_rank(c, 1e-10) == static_cast<int>(d * d),
                     "kraus_rank(witness(" + std::to_string(d) + ")) == d^2");
        ok &= expect(classify_channel(c) == ChannelClass::SIO,
                     "witness(" + std::to_string(d) + ") classifies SIO");
    }
    return ok;
}

bool criterion_qubit_io_reduction() {
    std::mt19937_64 rng(1003);
    bool ok = true;
    for (int rep = 0; rep < 200 && ok; ++rep) {
        // 6..12 operators: Walsh pairs plus an occasional unsplit strict one
        const std::size_t base = 3 + rep % 4;
        const std::size_t extra = (base < 6) ? rep % 2 : 0;
        const Channel in = testsupport::random_io_channel(2, base, rng, extra);
        if (!expect(in.kraus.size() >= 6 && in.kraus.size() <= 12, "input has 6..12 operators"))
            return false;
        const Channel out = reduce_qubit_io(in);
        ok &= expect(out.kraus.size() <= 5, "qubit IO reduces to at most 5 operators");
        ok &= expect(channels_equal(in, out, 1e-8), "qubit IO reduction preserves the channel");

        // template shapes in order, and the completeness constraints
        static const std::vector<std::vector<std::pair<int, int>>> templates = {
            {{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, {{0, 0}}};
        std::array<double, 5> a{};
        std::array<Complex, 4> b{};
        std::size_t t = 0;
        for (const auto& op : out.kraus) {
            const double threshold = 1e-9 * max_abs_entry(op);
            auto fits = [&](std::size_t ti) {
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) {
                        if (std::abs(op.at(r, c)) <= threshold) continue;
                        bool allowed = false;
                        for (const auto& [ar, ac] : templates[ti])
                            if (ar == r && ac == c) allowed = true;
                        if (!allowed) return false;
                    }
                return true;
            };
            while (t < 5 && !fits(t)) ++t;
            if (!expect(t < 5, "operators fit the five templates in order")) return false;
            switch (t) {
                case 0: a[0] = op.at(0, 0).real(); b[0] = op.at(0, 1); break;
                case 1: a[1] = op.at(1, 0).real(); b[1] = op.at(1, 1); break;
                case 2: a[2] = op.at(0, 0).real(); b[2] = op.at(1, 1); break;
                case 3: a[3] = op.at(1, 0).real(); b[3] = op.at(0, 1); break;
                case 4: a[4] = op.at(0, 0).real(); break;
            }
            const std::size_t a_row = (t == 1 || t == 3) ? 1 : 0;
            ok &= expect(std::abs(op.at(a_row, 0).imag()) < 1e-8, "a-entries are real");
            ++t;
        }
        double a_mass = 0.0, b_mass = 0.0;
        for (const double x : a) a_mass += x * x;
        for (const Complex& z : b) b_mass += std::norm(z);
        ok &= expect(std::abs(a_mass - 1.0) < 1e-8, "sum a_i^2 == 1");
        ok &= expect(std::abs(b_mass - 1.0) < 1e-8, "sum |b_j|^2 == 1");
        ok &= expect(std::abs(a[0] * b[0] + a[1] * b[1]) < 1e-8, "a1 b1 + a2 b2 == 0");
    }
    return ok;
}

bool criterion_qubit_sio_reduction() {
    std::mt19937_64 rng(1004);
    bool ok = true;
    for (int rep = 0; rep < 200 && ok; ++rep) {
        const Channel in = testsupport::random_sio_channel(2, 5 + rep % 6, rng);
        const Channel out = reduce_qubit_sio(in);
        ok &= expect(out.kraus.size() <= 4, "qubit SIO reduces to at most 4 operators");
        ok &= expect(channels_equal(in, out, 1e-8), "qubit SIO reduction preserves the channel");
        for (const auto& op : out.kraus)
            ok &= expect(classify_operator(op) == OperatorClass::StrictlyIncoherent,
                         "outputs stay strictly incoherent");
    }
    const Channel witness = permutation_lower_bound_channel(2);
    const Channel reduced = reduce_qubit_sio(witness);
    ok &= expect(reduced.kraus.size() == 4, "d^2 witness keeps exactly 4 operators");
    ok &= expect(channels_equal(witness, reduced, 1e-10), "witness reduction preserves channel");
    return ok;
}

bool criterion_general_d_reduction() {
    std::mt19937_64 rng(1005);
    bool ok = true;
    for (int rep = 0; rep < 50 && ok; ++rep) {
        const Channel in = testsupport::random_io_channel(3, 16, rng);  // 64 operators
        ok &= expect(in.kraus.size() >= 60, "d=3 IO input has at least 60 operators");
        const Channel out = reduce_by_shape(in, ReductionMode::IO);
        ok &= expect(out.kraus.size() <= 39, "d=3 IO reduces to at most 39 operators");
        const auto counts = class_counts(out);
        ok &= expect(counts[0] <= 27 && counts[1] <= 9 && counts[2] <= 3,
                     "IO class counts within d^(d-k+1)");
        ok &= expect(channels_equal(in, out, 1e-7), "d=3 IO reduction preserves the channel");
    }
    for (int rep = 0; rep < 50 && ok; ++rep) {
        const Channel in = testsupport::random_sio_channel(3, 60, rng);
        const Channel out = reduce_by_shape(in, ReductionMode::SIO);
        ok &= expect(out.kraus.size() <= 15, "d=3 SIO reduces to at most 15 operators");
        const auto counts = class_counts(out);
        ok &= expect(counts[0] <= 6 && counts[1] <= 6 && counts[2] <= 3,
                     "SIO class counts within d!/(k-1)!");
        ok &= expect(channels_equal(in, out, 1e-7), "d=3 SIO reduction preserves the channel");
    }
    return ok;
}

bool criterion_region_soundness() {
    bool ok = true;
    const std::vector<BlochVector> sources = {{0.5, 0, 0.5}, {-0.8, 0, -0.6}, {1, 0, 0}};
    for (std::size_t i = 0; i < sources.size() && ok; ++i) {
        const BlochVector& r = sources[i];
        oracle::SamplerConfig cfg{2000 + i, 10000, std::nullopt};
        const double r_perp2 = r.perp() * r.perp();
        for (const BlochVector& s : oracle::region_cloud(r, cfg)) {
            const double s_perp2 = s.x * s.x + s.y * s.y;
            if (!expect(s_perp2 <= r_perp2 + 1e-9, "transverse inequality with slack 1e-9")) {
                ok = false;
                break;
            }
            const double lhs = s.z * s.z * r_perp2;
            const double rhs = r_perp2 - (1.0 - r.z * r.z) * s_perp2;
            if (!expect(lhs <= rhs + 1e-9, "height inequality with slack 1e-9")) {
                ok = false;
                break;
            }
        }
    }
    oracle::SamplerConfig cfg{2024, 10000, std::nullopt};
    for (const BlochVector& s : oracle::region_cloud(BlochVector{0, 0, 0.65}, cfg)) {
        if (!expect(s.perp() <= 1e-9, "incoherent input keeps s_perp <= 1e-9")) {
            ok = false;
            break;
        }
    }
    return ok;
}

bool criterion_region_completeness() {
    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bool ok = true;
    const std::vector<BlochVector> sources = {{0.5, 0, 0.5}, {-0.8, 0, -0.6}, {1, 0, 0}};
    for (const BlochVector& r : sources) {
        int done = 0;
        while (done < 1000 && ok) {
            const BlochVector s{u(rng), u(rng), u(rng)};
            if (s.norm() > 1.0 || !feasible(r, s, Regime::SIO)) continue;
            ++done;
            const Channel c = construct_channel(r, s);
            ok &= expect(classify_channel(c) == ChannelClass::SIO,
                         "synthesized channel classifies SIO");
            const BlochVector got = bloch_from_density(apply(c, density_from_bloch(r)));
            ok &= expect(bloch_distance(got, s) < 1e-8, "synthesized channel maps r to s");
        }
    }
    // boundary saturation at 100 angles
    const BlochVector r{0.5, 0, 0.5};
    for (int i = 0; i < 100 && ok; ++i) {
        const double theta = (std::numbers::pi / 2) * i / 99.0;
        const Channel c = boundary_channel(r, theta);
        const BlochVector out =
            bloch_from_density(apply(c, density_from_bloch(BlochVector{r.perp(), 0, r.z})));
        const double r_perp2 = r.perp() * r.perp();
        const double lhs = out.z * out.z * r_perp2;
        const double rhs = r_perp2 - (1.0 - r.z * r.z) * (out.x * out.x + out.y * out.y);
        ok &= expect(std::abs(lhs - rhs) < 1e-10, "boundary channel saturates the height bound");
    }
    return ok;
}

bool criterion_gibbs_regions() {
    bool ok = true;
    const BlochVector r{0.5, 0, 0.5};

    // (a) unital rectangle
    for (int i = 0; i < 100; ++i) {
        const double s_z = -0.5 + i / 99.0;
        ok &= expect(std::abs(s_perp_max(r, 0.0, s_z) - 0.5) < 1e-10, "t_z = 0 rectangle");
    }
    const auto [lo0, hi0] = sz_range(r, 0.0);
    ok &= expect(std::abs(lo0 + 0.5) < 1e-10 && std::abs(hi0 - 0.5) < 1e-10,
                 "t_z = 0 range is [-|r_z|, |r_z|]");

    // (b) frozen poles
    for (int i = 0; i <= 100; ++i) {
        const double s_z_p = 0.5 + 0.5 * i / 100.0;
        const double expected_p = 0.5 * std::sqrt((1.0 - s_z_p) / (1.0 - 0.5));
        ok &= expect(std::abs(s_perp_max(r, 1.0, s_z_p) - expected_p) < 1e-10, "t_z = +1 curve");
        const double s_z_m = -1.0 + 1.5 * i / 100.0;
        const double expected_m = 0.5 * std::sqrt((1.0 + s_z_m) / (1.0 + 0.5));
        ok &= expect(std::abs(s_perp_max(r, -1.0, s_z_m) - expected_m) < 1e-10, "t_z = -1 curve");
    }

    // (c) generic range endpoints
    const auto [lo, hi] = sz_range(r, -0.2);
    ok &= expect(std::abs(lo + 2.0 / 3.0) < 1e-10, "t_z = -0.2 lower endpoint -2/3");
    ok &= expect(std::abs(hi - 0.5) < 1e-10, "t_z = -0.2 upper endpoint 0.5");

    // (d) sampled channels stay inside and preserve tau
    const std::array<double, 4> ts = {-0.2, 0.0, 0.7, 1.0};
    for (std::size_t i = 0; i < ts.size() && ok; ++i) {
        const double t_z = ts[i];
        const ComplexMatrix tau = density_from_bloch(BlochVector{0, 0, t_z});
        oracle::SamplerConfig cfg{3000 + i, 10000, t_z};
        const auto [rlo, rhi] = sz_range(r, t_z);
        for (const auto& c : oracle::sample_gibbs_sio_qubit(cfg)) {
            if (!expect(frob_distance(apply(c, tau), tau) <= 1e-10, "tau preserved")) {
                ok = false;
                break;
            }
            const BlochVector s = bloch_from_density(apply(c, density_from_bloch(r)));
            const bool inside =
                s.z >= rlo - 1e-9 && s.z <= rhi + 1e-9 &&
                s.perp() <= s_perp_max(r, t_z, std::clamp(s.z, rlo, rhi)) + 1e-9;
            if (!expect(inside, "sampled output inside the closed-form region")) {
                ok = false;
                break;
            }
        }
    }
    return ok;
}

struct Csv {
    std::vector<std::vector<double>> rows;
};

Csv run_region_command(const std::string& args, const std::string& path,
                       const std::string& expected_header) {
    const std::string cmd =
        std::string(INCOH_CLI_PATH) + " " + args + " --out " + path + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) throw std::runtime_error("command failed: " + cmd);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing CSV " + path);
    std::string header;
    std::getline(in, header);
    if (header != expected_header) throw std::runtime_error("bad header: " + header);
    Csv csv;
    for (std::string line; std::getline(in, line);) {
        std::vector<double> row;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) row.push_back(std::stod(cell));
        csv.rows.push_back(std::move(row));
    }
    std::remove(path.c_str());
    return csv;
}

bool criterion_figure_csvs() {
    bool ok = true;
    const std::string region_header = "theta,s_perp,s_z_max";
    const std::string gibbs_header = "s_z,s_perp_max";

    // achievable-region boundaries for all four initial states
    const Csv blue = run_region_command("region --r 0.5,0,0.5 --n 100", "/tmp/acc_fig1a.csv",
                                        region_header);
    ok &= expect(blue.rows.size() == 100, "100 rows for r = (0.5,0,0.5)");
    ok &= expect(std::abs(blue.rows.front()[1]) < 1e-10 && std::abs(blue.rows.front()[2] - 1) < 1e-10,
                 "first boundary point (0, 1)");
    ok &= expect(std::abs(blue.rows.back()[1] - 0.5) < 1e-10 &&
                     std::abs(blue.rows.back()[2] - 0.5) < 1e-10,
                 "last boundary point (0.5, 0.5)");

    const Csv green = run_region_command("region --r -0.8,0,-0.6 --n 100", "/tmp/acc_fig1b.csv",
                                         region_header);
    ok &= expect(std::abs(green.rows.back()[1] - 0.8) < 1e-10 &&
                     std::abs(green.rows.back()[2] - 0.6) < 1e-10,
                 "pure-state boundary endpoint (0.8, 0.6)");

    const Csv red = run_region_command("region --r 1,0,0 --n 100", "/tmp/acc_fig1c.csv",
                                       region_header);
    for (const auto& row : red.rows)
        ok &= expect(std::abs(row[1] * row[1] + row[2] * row[2] - 1.0) < 1e-10,
                     "r = (1,0,0) boundary is the unit circle");

    const Csv magenta = run_region_command("region --r 0,0,0.65 --n 50", "/tmp/acc_fig1d.csv",
                                           region_header);
    for (const auto& row : magenta.rows)
        ok &= expect(std::abs(row[1]) < 1e-10, "incoherent state boundary stays on the z axis");

    // Gibbs-preserving regions: fixed points -0.2 (fig 2), 0.7 and 0 (fig 3),
    // +1 and -1 (fig 4)
    const Csv fig2 = run_region_command("gibbs-region --r 0.5,0,0.5 --t -0.2 --n 100",
                                        "/tmp/acc_fig2.csv", gibbs_header);
    ok &= expect(std::abs(fig2.rows.front()[0] + 2.0 / 3.0) < 1e-10, "fig 2 lower s_z = -2/3");
    ok &= expect(std::abs(fig2.rows.back()[0] - 0.5) < 1e-10, "fig 2 upper s_z = 0.5");
    ok &= expect(std::abs(fig2.rows.back()[1] - 0.5) < 1e-10, "fig 2 boundary ends at r_perp");

    const Csv fig3l = run_region_command("gibbs-region --r 0.5,0,0.5 --t 0.7 --n 100",
                                         "/tmp/acc_fig3l.csv", gibbs_header);
    ok &= expect(std::abs(fig3l.rows.front()[0] - 0.5) < 1e-10, "fig 3 left starts at r_z");

    const Csv fig3r = run_region_command("gibbs-region --r 0.5,0,0.5 --t 0 --n 100",
                                         "/tmp/acc_fig3r.csv", gibbs_header);
    for (const auto& row : fig3r.rows)
        ok &= expect(std::abs(row[1] - 0.5) < 1e-10, "fig 3 right is the rectangle");

    const Csv fig4l = run_region_command("gibbs-region --r 0.5,0,0.5 --t 1 --n 100",
                                         "/tmp/acc_fig4l.csv", gibbs_header);
    for (const auto& row : fig4l.rows)
        ok &= expect(std::abs(row[1] - 0.5 * std::sqrt((1.0 - row[0]) / 0.5)) < 1e-10,
                     "fig 4 left matches the +1 curve");

    const Csv fig4r = run_region_command("gibbs-region --r 0.5,0,0.5 --t -1 --n 100",
                                         "/tmp/acc_fig4r.csv", gibbs_header);
    for (const auto& row : fig4r.rows)
        ok &= expect(std::abs(row[1] - 0.5 * std::sqrt((1.0 + row[0]) / 1.5)) < 1e-10,
                     "fig 4 right matches the -1 curve");
    return ok;
}

}  // namespace

int main() {
    criterion(1, "incoherent Kraus-rank bound table", 1.0, criterion_bound_table);
    criterion(2, "d^2 lower-bound witness rank and class", 1000.0, criterion_lower_bound_witness);
    criterion(3, "qubit IO canonical reduction (200 random channels)", 5000.0,
              criterion_qubit_io_reduction);
    criterion(4, "qubit SIO canonical reduction (200 random channels + witness)", 5000.0,
              criterion_qubit_sio_reduction);
    criterion(5, "d=3 shape-grouped reduction (50 IO + 50 SIO channels)", 60000.0,
              criterion_general_d_reduction);
    criterion(6, "conversion-region soundness (3 x 10^4 sampled channels)", 30000.0,
              criterion_region_soundness);
    criterion(7, "conversion completeness and boundary saturation", 30000.0,
              criterion_region_completeness);
    criterion(8, "Gibbs-preserving regions (closed forms + 4 x 10^4 samples)", 30000.0,
              criterion_gibbs_regions);
    criterion(9, "figure boundary CSVs via the CLI", 10000.0, criterion_figure_csvs);

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
}
