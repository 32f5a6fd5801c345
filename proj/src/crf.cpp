#include "huecomp/crf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace huecomp {

namespace {

void validate(const CrfSolveConfig& cfg) {
    if (cfg.samples < 1) throw InputError("crf: sample count must be at least 1");
    if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) {
        throw InputError("crf: smoothness lambda must be a finite value >= 0");
    }
    if (cfg.levels < 4) throw InputError("crf: need at least 4 code levels");
}

struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
};

}  // namespace

double hat_weight(int code, int levels) {
    const int z_min = 0;
    const int z_max = levels - 1;
    if (code < z_min || code > z_max) {
        throw InputError("hat_weight: code " + std::to_string(code) + " outside [0," + std::to_string(z_max) + "]");
    }
    return 2 * code <= z_min + z_max ? code - z_min : z_max - code;
}

std::vector<double> isotonic_nondecreasing(std::span<const double> values) {
    std::vector<Block> blocks;
    blocks.reserve(values.size());
    for (double v : values) {
        blocks.push_back({v, 1});
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
            const Block top = blocks.back();
            blocks.pop_back();
            blocks.back().sum += top.sum;
            blocks.back().count += top.count;
        }
    }
    std::vector<double> out;
    out.reserve(values.size());
    for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean());
    return out;
}

std::vector<std::size_t> sample_pixels(const ExposureStack& stack, const CrfSolveConfig& cfg) {
    validate(cfg);
    const LdrImage& mid = stack.image(stack.middle_index());
    const std::size_t n = mid.size();
    const auto p = static_cast<std::size_t>(cfg.samples);
    if (p > n) {
        throw InputError("crf: " + std::to_string(p) + " samples requested but the image has only " +
                         std::to_string(n) + " pixels");
    }

    std::vector<int> code(n);
    std::vector<std::uint64_t> tie(n);
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t i = 0; i < n; ++i) {
        code[i] = quantize(luma(mid[i]), cfg.levels);
        tie[i] = rng();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (code[a] != code[b]) return code[a] < code[b];
        if (tie[a] != tie[b]) return tie[a] < tie[b];
        return a < b;
    });

    std::vector<std::size_t> picked(p);
    for (std::size_t k = 0; k < p; ++k) {
        // rank floor((k + 1/2) n / p); strictly increasing because n >= p
        picked[k] = order[((2 * k + 1) * n) / (2 * p)];
    }
    return picked;
}

namespace {

std::vector<double> solve_channel(const std::vector<std::vector<int>>& codes,  // [sample][exposure]
                                  std::span<const double> log_times, const CrfSolveConfig& cfg, int channel) {
    const int levels = cfg.levels;
    const int mid = levels / 2;

    // Samples saturated in every exposure carry no equation; drop them.
    std::vector<std::size_t> informative;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const bool any = std::any_of(codes[i].begin(), codes[i].end(),
                                     [&](int z) { return hat_weight(z, levels) > 0.0; });
        if (any) informative.push_back(i);
    }

    std::size_t data_rows = 0;
    for (std::size_t i : informative) {
        for (int z : codes[i]) data_rows += hat_weight(z, levels) > 0.0 ? 1 : 0;
    }
    const auto cols = static_cast<Eigen::Index>(levels + informative.size());
    const auto rows = static_cast<Eigen::Index>(data_rows + static_cast<std::size_t>(levels - 2) + 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);

    Eigen::Index r = 0;
    for (std::size_t s = 0; s < informative.size(); ++s) {
        const auto& zs = codes[informative[s]];
        for (std::size_t j = 0; j < zs.size(); ++j) {
            const double w = hat_weight(zs[j], levels);
            if (w == 0.0) continue;
            a(r, zs[j]) = w;
            a(r, levels + static_cast<Eigen::Index>(s)) = -w;
            b(r) = w * log_times[j];
            ++r;
        }
    }
    for (int z = 1; z < levels - 1; ++z) {
        const double w = cfg.lambda * hat_weight(z, levels);
        a(r, z - 1) = w;
        a(r, z) = -2.0 * w;
        a(r, z + 1) = w;
        ++r;
    }
    a(r, mid) = 1.0;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) {
        static constexpr const char* names[] = {"red", "green", "blue"};
        throw SolverError("crf: " + std::string(names[channel]) + " channel system is rank deficient (rank " +
                          std::to_string(qr.rank()) + " of " + std::to_string(cols) + " unknowns, " +
                          std::to_string(informative.size()) +
                          " informative samples); the stack needs exposure variation across the code range");
    }
    const Eigen::VectorXd x = qr.solve(b);

    std::vector<double> g(x.data(), x.data() + levels);
    g = isotonic_nondecreasing(g);
    const double pin = g[mid];
    for (double& v : g) v -= pin;
    return g;
}

}  // namespace

CrfTable estimate_inverse_crf(const ExposureStack& stack, const CrfSolveConfig& cfg) {
    validate(cfg);
    const auto n_exp = static_cast<long long>(stack.count());
    const long long p = cfg.samples;
    if (p * (n_exp - 1) <= cfg.levels - 2) {
        throw SolverError("crf: P(N-1) = " + std::to_string(p) + "*(" + std::to_string(n_exp) +
                          "-1) = " + std::to_string(p * (n_exp - 1)) + " must exceed levels-2 = " +
                          std::to_string(cfg.levels - 2) + "; raise --samples or add exposures");
    }

    const std::vector<std::size_t> picks = sample_pixels(stack, cfg);
    const std::vector<double> log_times = stack.log_exposure_times();

    std::array<std::vector<std::vector<int>>, 3> codes;
    for (int c = 0; c < 3; ++c) {
        codes[c].assign(picks.size(), std::vector<int>(stack.count()));
        for (std::size_t s = 0; s < picks.size(); ++s) {
            for (std::size_t j = 0; j < stack.count(); ++j) {
                codes[c][s][j] = quantize(stack.image(j)[picks[s]][c], cfg.levels);
            }
        }
    }

    std::array<std::vector<double>, 3> tables;
    std::array<std::string, 3> errors;
#pragma omp parallel for schedule(static, 1)
    for (int c = 0; c < 3; ++c) {
        try {
            tables[c] = solve_channel(codes[c], log_times, cfg, c);
        } catch (const SolverError& e) {
            errors[c] = e.what();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw SolverError(e);
    }
    return CrfTable(std::move(tables));
}

}  // namespace huecomp
