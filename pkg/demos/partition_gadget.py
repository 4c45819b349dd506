"""Partition instances turned into discounted gap queries.

Each item is handed either to the leader or to the follower along a
chain; the follower may instead take T - 2/3 right away.  A balanced
split is exactly what keeps him on the chain while giving the leader
enough, so the gap answer equals solvability.
"""

from stackval import PartitionInstance, build_partition_reduction, gap_decide
from stackval.reductions import check_separation


def main():
    for weights in ((1, 1), (1, 3), (1, 2, 3), (2, 2, 2), (1, 1, 3, 3)):
        p = PartitionInstance(weights)
        a, lam, eps, c = build_partition_reduction(p)
        answers = {m: gap_decide(a, lam, "v0", c, eps, m).answer for m in ("csv", "asv")}
        print(f"{weights}: solvable={p.solvable()}, lambda={lam}, eps={eps}, "
              f"separation ok={check_separation(p.T, p.n, lam, eps)}, gap answers {answers}")


if __name__ == "__main__":
    main()
