"""Smoke test for the pyenarena extension module."""

from pathlib import Path

import pyenarena as ea

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"


def main():
    weak = ea.Arena.load(str(DATA / "weak_bound.arena"))
    assert weak.num_states == 6 and weak.initial == "q0" and weak.targets == ["qt"]

    r = ea.solve(weak, "LW", L=0, W=5)
    assert r.p1_wins and r.solver == "lwpoly", r
    assert r.states[-1] == "qt" and r.levels[-1] == 0
    assert ("q1", 5) in zip(r.states, r.levels)
    assert ea.solve(weak, "LW", L=0, W=5, oracle=True).p1_wins
    assert ea.solve(weak, "LW", L=0, W=4).winner == "P2"

    soft = ea.Arena.load(str(DATA / "soft_bound.arena"))
    assert ea.solve(soft, "LV", L=0, S=3, U=6, V=3, measure="count").p1_wins
    best_v, best_u = ea.minimize(soft, L=0, S=3, v_max=10, measure="count")
    assert ea.solve(soft, "LV", L=0, S=3, U=best_u, V=best_v, measure="count").p1_wins
    assert not ea.solve(soft, "LV", L=0, S=3, U=best_u, V=best_v - 1, measure="count").p1_wins

    assert ea.violation_stats([0, 4, 5, 1, 6], 3) == (3, 2, 6)

    cycles = ea.Arena.load(str(DATA / "two_cycles.arena"))
    assert ea.universal_cycle_gaps(cycles, 0, 5)[0] == 1

    g = ea.random_arena(1, states=4)
    assert ea.random_arena(1, states=4).to_text() == g.to_text()
    assert ea.Arena.parse(g.to_text()).to_json() == g.to_json()
    assert ea.reduce_energy_to_reach(g).num_states > g.num_states

    instances, divergent = ea.crosscheck("energy:reduction", seeds=30)
    assert instances == 30 and divergent == []

    try:
        ea.solve(weak, "LW", L=0)
    except ValueError:
        pass
    else:
        raise AssertionError("missing W accepted")

    print("pyenarena smoke test ok")


if __name__ == "__main__":
    main()
