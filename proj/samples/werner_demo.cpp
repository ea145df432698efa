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

// Walks through the library on the Werner family:
//
//   1. the three critical visibilities for small d,
//   2. a local model sampled against the Born statistics it claims,
//   3. the same comparison above the model's region, where it must fail,
//   4. the CHSH value on both sides of p = 1/sqrt(2).
//
// Usage: werner_demo [d] [samples]

#include <cstdio>
#include <cstdlib>

#include <lhvlab/lhv.hpp>
#include <lhvlab/verify.hpp>

using namespace lhvlab;

namespace {

void report(const char *label, const CompareReport &r) {
    std::printf("  %-28s max|dev| %.2e  max z %5.2f  failing cells %zu  -> %s\n", label,
                r.max_abs_dev, r.max_z, r.failures, r.pass ? "agrees" : "disagrees");
}

} // namespace

int main(int argc, char **argv) {
    const int d = argc > 1 ? std::atoi(argv[1]) : 3;
    const std::int64_t samples = argc > 2 ? std::atoll(argv[2]) : 200000;
    if (d < 2 || d > 8 || samples < 1000) {
        std::fprintf(stderr, "usage: werner_demo [d in 2..8] [samples >= 1000]\n");
        return 2;
    }

    std::printf("critical visibilities of the Werner family\n");
    std::printf("  d   separable   projective   POVM\n");
    for (int k = 2; k <= 5; ++k) {
        const ThresholdTable t = thresholds(Family::werner, k);
        std::printf("  %d   %.6f    %.6f     %.6f\n", k, t.p_sep.lo, t.p_pm, t.p_povm);
    }

    // Random projective settings for both parties, paired x_A = x_B.
    Rng rng = make_stream(2026);
    std::vector<std::vector<Measurement>> settings(2);
    for (int x = 0; x < 4; ++x) {
        settings[0].push_back(random_projective(d, rng));
        settings[1].push_back(random_projective(d, rng));
    }
    const SettingPlan plan = SettingPlan::paired(settings);

    SimulationOptions opt;
    opt.samples = samples;
    opt.seed = 1;
    const Behavior sampled = simulate(*werner_model(d), plan, opt);

    const double p = werner_p_pm(d);
    std::printf("\nWerner model, d = %d, %lld rounds per setting\n", d,
                static_cast<long long>(samples));
    report("vs werner_state(p_pm)", compare(sampled, born_behavior(werner_state(d, p), plan)));
    // well above the claim: the sampled statistics cannot be those of p = 1
    report("vs werner_state(1)", compare(sampled, born_behavior(werner_state(d, 1.0), plan)));

    const auto ns = no_signalling_check(sampled);
    std::printf("  no-signalling: %s (max dev %.2e)\n", ns.pass ? "ok" : "violated", ns.max_dev);

    std::printf("\nmaximal CHSH value of werner_state(2, p)\n");
    for (double q : {0.5, 0.70, 0.7071067811865476, 0.72, 1.0}) {
        const ChshResult r = maximize_chsh(werner_state(2, q), 10, 7);
        std::printf("  p = %.4f   S = %.5f%s\n", q, r.value, r.value > 2.0 + 1e-9 ? "  (violates)" : "");
    }
    return 0;
}
