"""Walk through the interval instance: A = [-3, -1], B = [1, 3].

The halving map sends x in A to (1-x)/2 in B and x in B to (-1-x)/2 in A.
Iterating it from any start walks toward the facing endpoints -1 and 1,
which form the exact best proximity set at distance d(A, B) = 2.
"""
import gproximity as gp


def main():
    inst = gp.interval_example(grid_step=0.01)
    print(f"instance: {inst.name}, {len(inst.points)} grid points")
    print(f"d(A, B) = {inst.d_ab}")

    # the map is an exact isometry on the cross pair (-1, 1), so it is
    # nonexpansive but not a contraction on the complete graph
    est = gp.min_contraction_factor(inst)
    print(f"worst edge ratio = {est.alpha_min} at {est.worst_edge}")
    print(f"nonexpansive: {bool(gp.is_edge_nonexpansive(inst))}")

    res = gp.find_proximity_point(inst, (-3.0,), gp.SolveConfig(epsilon=0.3))
    print(f"\niterating from -3 with epsilon = 0.3 -> {res.status}"
          f" after {res.iterations} steps at x = {res.witness[0]}")
    for n, r in enumerate(res.trace.residuals):
        print(f"  step {n}: x = {res.trace.points[n][0]:+.4f}  residual = {r:.4f}")

    exact = gp.enumerate_proximity_set(inst, 0.0)
    print(f"\nexact proximity set: {[p[0] for p in exact.members]}")
    print(f"diameter: {gp.proximity_diameter(inst, exact)}")

    loose = gp.enumerate_proximity_set(inst, 0.3)
    print(f"at epsilon = 0.3 the set grows to {len(loose.members)} points "
          f"spanning [{loose.members[0][0]}, {loose.members[-1][0]}]")


if __name__ == "__main__":
    main()
