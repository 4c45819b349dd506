"""Gap queries on the target discounted-sum gadget.

The leader spells an infinite a/b word from s; the follower at v accepts
it only if it costs him at most as much as bailing out to z.  With
a=0, b=1, lambda=2/3 and target 3/2, the cooperative value 1 needs
infinite memory, yet a finite-memory strategy gets within any epsilon.
"""

from fractions import Fraction

from stackval import TdsInstance, build_tds_reduction, evaluate_asv, evaluate_csv, gap_decide
from stackval.reductions import sequence_strategy


def main():
    inst = TdsInstance(0, 1, Fraction(3, 2), Fraction(2, 3))
    a, v = build_tds_reduction(inst)
    lam = inst.lam

    for word in (("b",), ("b", "a"), ("a",)):
        s = sequence_strategy((), word)
        print(f"repeat {''.join(word)}: csv {evaluate_csv(a, lam, s, v)}, "
              f"asv {evaluate_asv(a, lam, s, v)}")

    for c in (Fraction(4, 5), Fraction(3, 2)):
        verdict = gap_decide(a, lam, v, c, Fraction(1, 10), "csv")
        print(f"\ncsv above {c} (epsilon 1/10)? {'Yes' if verdict.answer else 'No'}")
        print(f"  horizon {verdict.horizon.N}, best candidate value {verdict.value} "
              f"with {len(verdict.strategy.memory)} memory states")


if __name__ == "__main__":
    main()
