"""Adversarial Stackelberg value of a small mean-payoff game.

The follower at v0 can stay on the v0/v1 loop, which pays both players 1,
or leave for v2, which pays the leader 0 and the follower 1.  The leader
owns v1 and can add an extra v1 loop that pays the follower 2 and the
leader 0.  The value 1 is approached by leader strategies but never
reached.
"""

from fractions import Fraction

from stackval import asv_threshold, asv_value_details, check_witness, synthesize_leader_strategy
from stackval.asv_mp import lambda_region, witness_lasso
from stackval.gallery import fig2


def main():
    a = fig2()
    d = asv_value_details(a, "v0")
    print(f"adversarial value at v0: {d.value} (supremum attained: {d.attained})")
    print(f"bad thresholds at v0: {lambda_region(a, 'v0').region!r}")

    for c in (Fraction(1, 2), Fraction(15, 16), Fraction(1)):
        ok, cert = asv_threshold(a, "v0", c)
        print(f"\nvalue above {c}? {'yes' if ok else 'no'}")
        if not ok:
            continue
        print(f"  mix cycle {cert.cycle1} with weight {cert.alpha} and {cert.cycle2} "
              f"with weight {cert.beta}: payoff ({cert.c_prime}, {cert.d})")
        k, lasso, payoff = witness_lasso(a, cert)
        print(f"  witness play: prefix of {len(lasso.prefix)} and cycle of {len(lasso.cycle)} vertices, "
              f"payoff ({payoff[0]}, {payoff[1]})")
        assert check_witness(a, "v0", lasso, c)[0]
        strategy = synthesize_leader_strategy(a, cert)
        hist = strategy.simulate(2000)
        total = sum(a.weight(a.index[u], a.index[x], 0) for u, x in zip(hist, hist[1:]))
        print(f"  leader mean over 2000 simulated steps: {float(total / 2000):.4f}")


if __name__ == "__main__":
    main()
