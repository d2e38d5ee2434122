"""Replay the subspace chain argument on two instances and print each step.

Run: python3 demos/03_proof_replay.py
"""

from setpair_lab import PairFamilyInstance, replay

star = PairFamilyInstance.from_sets(5, [([1, x], sorted(set(range(1, 6)) - {1, x})) for x in range(2, 6)])
trace = replay(star)
print("star instance, a=2, b=3")
for s in trace.steps:
    print(f"  pair {s.index}: dim Y={s.y_dim}, dim Z={s.z_dim}, self-annihilating={s.self_annihilating}")
print(f"  weighted sum {trace.weighted_sum}, slack {trace.final_slack}")

# With t = 1 the replay first projects to a t = 0 instance of rank N - 2t.
pairs = [([1, 2, 5], [3, 4, 5]), ([1, 3, 5], [2, 4, 5]), ([2, 3, 5], [1, 4, 5])]
trace = replay(PairFamilyInstance.from_sets(7, pairs, 1), seed=0)
rec = trace.reduction
print("\nthreshold-one instance, a=b=3")
print(f"  reduction: dim V'={rec.v_prime.dim}, dim V''={rec.v_second.dim}, dim Q={rec.q.dim}, "
      f"attempts={rec.attempts}")
print(f"  chain dims {trace.chain_dims}, weighted sum {trace.weighted_sum}")
