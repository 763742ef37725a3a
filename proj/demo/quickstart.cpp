// build a channel, look at its entropies, check the Holevo bounds on a random ensemble

#include <cstdio>

#include <qchan/davies.hpp>
#include <qchan/io.hpp>

using namespace qchan;

int main() {
    SeededRng rng(42);

    Channel phi = depolarizing(2, 0.3);
    auto r2 = EntropyOrder::renyi(2.0);
    std::printf("depolarizing(2, 0.3): S_map = %.6f  S2_map = %.6f  S2_min = %.6f\n", map_entropy(phi),
                map_entropy(phi, r2), min_output_entropy(phi, r2).value);

    Matrix rho = hs_random_density(2, rng);
    auto t = theorem1_check(rho, random_channel(2, 3, rng).kraus());
    std::printf("measurement: chi = %.6f <= S(sigma) = %.6f <= H(P) = %.6f\n", t.chi, t.s_sigma, t.h_p);

    Ensemble e = random_ensemble(3, 2, rng);
    BoundReport b = bound_report(e);
    std::printf("ensemble: %s\n", to_json(b).dump().c_str());

    auto m = membership(symmetric_block(0.04512, 0.22744, 0.22744));
    std::printf("qutrit block: Davies member = %s, L21 = %.6g\n", m.is_member ? "yes" : "no", m.l21);

    std::printf("channel json: %s\n", channel_to_json(phi).dump().c_str());
    return 0;
}
