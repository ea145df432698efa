// Copyright 2026 The lhvlab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Monte-Carlo estimate of a local model's behavior.
 *
 * Each round draws one hidden state, asks every (party, setting) responder
 * for its distribution, samples one outcome per responder and counts the
 * joint cell of every setting tuple. Rounds are grouped in fixed-size
 * chunks seeded by chunk index, so the counts (and the report) do not
 * depend on how many worker threads ran.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "../lhv/model.hpp"
#include "behavior.hpp"
#include "parallel.hpp"

namespace lhvlab {

struct SimulationOptions {
    std::int64_t samples = 1000000;
    std::uint64_t seed = 0;
    int threads = 0;                 ///< 0: default_threads()
    std::int64_t chunk = 1 << 15;    ///< rounds per seeded chunk
};

inline Behavior simulate(const LocalModel &model, const SettingPlan &plan,
                         const SimulationOptions &opt) {
    const int n = plan.parties();
    require(n == model.parties(), Errc::invalid_argument, "plan and model disagree on parties");
    require(opt.samples >= 1 && opt.chunk >= 1, Errc::invalid_argument, "sample count");

    std::vector<std::vector<std::unique_ptr<Responder>>> rs(n);
    for (int i = 0; i < n; ++i) {
        for (const Measurement &m : plan.settings[i]) {
            rs[i].push_back(model.responder(i, m));
        }
    }

    Behavior b;
    b.parties = n;
    b.tuples = plan.tuples;
    b.samples = opt.samples;
    b.seed = opt.seed;
    int max_slots = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<int> o;
        for (const auto &r : rs[i]) {
            o.push_back(r->slots());
            max_slots = std::max(max_slots, r->slots());
        }
        b.outcomes.push_back(o);
    }
    std::vector<std::vector<std::int64_t>> strides(b.rows());
    std::size_t total_cells = 0;
    std::vector<std::size_t> offset(b.rows());
    for (std::size_t t = 0; t < b.rows(); ++t) {
        const auto shape = b.row_shape(t);
        std::int64_t s = 1;
        strides[t].assign(n, 0);
        for (int i = n - 1; i >= 0; --i) {
            strides[t][i] = s;
            s *= shape[i];
        }
        offset[t] = total_cells;
        total_cells += static_cast<std::size_t>(s);
    }

    const std::int64_t chunks = (opt.samples + opt.chunk - 1) / opt.chunk;
    const int workers =
        static_cast<int>(std::min<std::int64_t>(opt.threads > 0 ? opt.threads : default_threads(),
                                                chunks));
    std::vector<std::int64_t> counts(total_cells, 0);
    std::mutex merge;
    std::exception_ptr failure;

    auto work = [&](int w) {
        try {
            std::vector<std::int64_t> local(total_cells, 0);
            std::vector<double> resp(max_slots);
            std::vector<std::vector<int>> picked(n);
            for (int i = 0; i < n; ++i) {
                picked[i].assign(rs[i].size(), 0);
            }
            HiddenState l;
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            for (std::int64_t c = w; c < chunks; c += workers) {
                Rng rng = make_stream(opt.seed, static_cast<std::uint64_t>(c));
                const std::int64_t end = std::min(opt.samples, (c + 1) * opt.chunk);
                for (std::int64_t round = c * opt.chunk; round < end; ++round) {
                    model.sample(rng, l);
                    for (int i = 0; i < n; ++i) {
                        for (std::size_t x = 0; x < rs[i].size(); ++x) {
                            const int k = rs[i][x]->slots();
                            rs[i][x]->respond(l, std::span<double>(resp.data(), k));
                            picked[i][x] = sample_index(
                                std::span<const double>(resp.data(), k), u01(rng));
                        }
                    }
                    for (std::size_t t = 0; t < b.tuples.size(); ++t) {
                        std::size_t cell = offset[t];
                        for (int i = 0; i < n; ++i) {
                            cell += strides[t][i] * picked[i][b.tuples[t][i]];
                        }
                        ++local[cell];
                    }
                }
            }
            std::lock_guard<std::mutex> lock(merge);
            for (std::size_t k = 0; k < total_cells; ++k) {
                counts[k] += local[k];
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(merge);
            failure = std::current_exception();
        }
    };

    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    const double ns = static_cast<double>(opt.samples);
    for (std::size_t t = 0; t < b.rows(); ++t) {
        const std::size_t cells = (t + 1 < b.rows() ? offset[t + 1] : total_cells) - offset[t];
        std::vector<double> p(cells), se(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            p[c] = counts[offset[t] + c] / ns;
            se[c] = std::sqrt(p[c] * (1.0 - p[c]) / ns);
        }
        b.p.push_back(std::move(p));
        b.std_err.push_back(std::move(se));
    }
    return b;
}

/// Exact-in-lambda average of the responses' product, i.e. the behavior of
/// the model with outcome sampling integrated out but lambda still sampled.
/// Useful as a lower-variance estimator in tests.
inline Behavior simulate_response_average(const LocalModel &model, const SettingPlan &plan,
                                          std::int64_t samples, std::uint64_t seed) {
    const int n = plan.parties();
    require(n == model.parties(), Errc::invalid_argument, "plan and model disagree on parties");
    std::vector<std::vector<std::unique_ptr<Responder>>> rs(n);
    for (int i = 0; i < n; ++i) {
        for (const Measurement &m : plan.settings[i]) {
            rs[i].push_back(model.responder(i, m));
        }
    }
    Behavior b;
    b.parties = n;
    b.tuples = plan.tuples;
    b.samples = samples;
    b.seed = seed;
    for (int i = 0; i < n; ++i) {
        std::vector<int> o;
        for (const auto &r : rs[i]) o.push_back(r->slots());
        b.outcomes.push_back(o);
    }
    std::vector<std::vector<double>> sum(b.rows()), sum2(b.rows());
    for (std::size_t t = 0; t < b.rows(); ++t) {
        std::size_t cells = 1;
        for (int s : b.row_shape(t)) cells *= s;
        sum[t].assign(cells, 0.0);
        sum2[t].assign(cells, 0.0);
    }
    std::vector<std::vector<std::vector<double>>> resp(n);
    for (int i = 0; i < n; ++i) {
        for (const auto &r : rs[i]) resp[i].emplace_back(r->slots());
    }
    Rng rng = make_stream(seed, 0);
    HiddenState l;
    std::vector<int> digits;
    for (std::int64_t round = 0; round < samples; ++round) {
        model.sample(rng, l);
        for (int i = 0; i < n; ++i) {
            for (std::size_t x = 0; x < rs[i].size(); ++x) {
                rs[i][x]->respond(l, resp[i][x]);
            }
        }
        for (std::size_t t = 0; t < b.rows(); ++t) {
            const auto shape = b.row_shape(t);
            for (std::size_t c = 0; c < sum[t].size(); ++c) {
                detail::unravel(static_cast<long>(c), shape, digits);
                double v = 1.0;
                for (int i = 0; i < n; ++i) v *= resp[i][b.tuples[t][i]][digits[i]];
                sum[t][c] += v;
                sum2[t][c] += v * v;
            }
        }
    }
    const double ns = static_cast<double>(samples);
    for (std::size_t t = 0; t < b.rows(); ++t) {
        std::vector<double> p(sum[t].size()), se(sum[t].size());
        for (std::size_t c = 0; c < p.size(); ++c) {
            p[c] = sum[t][c] / ns;
            se[c] = std::sqrt(std::max(sum2[t][c] / ns - p[c] * p[c], 0.0) / ns);
        }
        b.p.push_back(std::move(p));
        b.std_err.push_back(std::move(se));
    }
    return b;
}

} // namespace lhvlab
