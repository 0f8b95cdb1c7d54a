import itertools

import pytest

from lbtree.families import FamilySpec, generate, sharpness_graph
from lbtree.graph import build_graph
from lbtree.oracle import min_score
from lbtree.search import (
    DisconnectedGraph,
    ExchangeMove,
    InvalidMove,
    MoveKind,
    Potential,
    SolverConfig,
    SolveStatus,
    _Evaluator,
    _Rooted,
    apply_move,
    dfs_tree,
    enumerate_moves,
    extend,
    potential_of,
    solve,
    tree_score,
)
from lbtree.structure import check_hypotheses
from lbtree.tree import SpanningSubtree, TooManyBranches, metrics, norm_edge

from conftest import complete, cycle, gnp, path, random_connected, star


def test_extend_path():
    G = path(3)
    T = SpanningSubtree(G, [(0, 1)])
    grown, delta = extend(G, T)
    assert grown.edges == {(0, 1), (1, 2)} and delta == 0
    assert extend(G, grown) is None


def test_extend_star_deltas():
    G = star(4)
    T = SpanningSubtree(G, [(0, 1)])
    deltas = []
    while (step := extend(G, T)) is not None:
        T, delta = step
        deltas.append(delta)
    assert T.is_spanning() and tree_score(T) == 5
    assert deltas == [0, 2, 1]


def test_extend_sharpness_reaches_spanning():
    G = sharpness_graph(2)
    x = 8
    T = SpanningSubtree(G, [(0, 1), (1, x)])
    before = tree_score(T)
    while (step := extend(G, T)) is not None:
        T2, delta = step
        assert delta in (0, 1, 2) and tree_score(T2) - tree_score(T) == delta
        T = T2
    assert T.is_spanning() and tree_score(T) >= before


def test_moves_c4_rotation():
    G = cycle(4)
    T = SpanningSubtree(G, [(0, 1), (1, 2), (2, 3)])
    moves = list(enumerate_moves(G, T))
    assert any(mv.remove == ((0, 1),) and mv.add == ((0, 3),) for mv in moves)
    assert all(tree_score(apply_move(T, mv)) == 2 for mv in moves)


def test_moves_on_a_tree_host():
    G = sharpness_graph(1)
    T = SpanningSubtree(G, G.edges())
    assert list(enumerate_moves(G, T)) == []


def test_k4_star_two_swap():
    G = complete(4)
    T = SpanningSubtree(G, [(0, 1), (0, 2), (0, 3)])
    assert tree_score(T) == 4
    two = [mv for mv in enumerate_moves(G, T) if len(mv.remove) == 2]
    assert any(tree_score(apply_move(T, mv)) == 2 for mv in two)


def _brute_swaps(G, T, k):
    tree = sorted(T.edges)
    other = [e for e in G.edges() if e not in T.edges]
    out = set()
    for rem in itertools.combinations(tree, k):
        for add in itertools.combinations(other, k):
            edges = (T.edges - set(rem)) | set(add)
            parent = list(range(G.n))

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            ok = True
            for u, v in edges:
                a, b = find(u), find(v)
                if a == b:
                    ok = False
                    break
                parent[a] = b
            if ok:
                out.add((rem, add))
    return out


@pytest.mark.parametrize("targeted", [True, False])
def test_enumeration_is_complete_and_sound(rng, targeted):
    kinds = set()
    for _ in range(25):
        G = random_connected(int(rng.integers(4, 8)), 0.55, rng)
        T, _ = dfs_tree(G, int(rng.integers(G.n)))
        cfg = SolverConfig(max_swap_size=3, use_targeted_moves=targeted)
        moves = list(enumerate_moves(G, T, cfg, max_branches=None))
        keys = [(mv.remove, mv.add) for mv in moves]
        assert len(keys) == len(set(keys))
        for mv in moves:
            T2 = apply_move(T, mv)
            assert T2.vertices == T.vertices
            kinds.add(mv.kind)
        expected = set()
        for k in (1, 2, 3):
            expected |= _brute_swaps(G, T, k)
        assert set(keys) == expected
    assert MoveKind.TWO_SWAP in kinds and MoveKind.THREE_SWAP in kinds


def test_branch_filter(rng):
    for _ in range(20):
        G = random_connected(7, 0.6, rng)
        T, _ = dfs_tree(G, 0)
        for mv in enumerate_moves(G, T, SolverConfig(max_swap_size=2)):
            assert len(metrics(apply_move(T, mv)).branches) <= 2


def test_evaluator_matches_rebuilt_potential(rng):
    checked = 0
    for _ in range(40):
        G = random_connected(int(rng.integers(6, 11)), 0.45, rng)
        T, _ = dfs_tree(G, int(rng.integers(G.n)))
        try:
            cur = potential_of(G, T)
        except TooManyBranches:
            continue
        ev = _Evaluator(_Rooted(T), cur)
        for mv in enumerate_moves(G, T, SolverConfig(max_swap_size=2)):
            assert ev.potential(mv.remove, mv.add) == potential_of(G, apply_move(T, mv))
            checked += 1
    assert checked > 100


def test_apply_move_examples():
    G = cycle(4)
    T = SpanningSubtree(G, [(0, 1), (1, 2), (2, 3)])
    mv = ExchangeMove.make([(0, 1)], [(3, 0)], MoveKind.LEAF_REATTACH)
    T2 = apply_move(T, mv)
    assert T2.edges == {(1, 2), (2, 3), (0, 3)}
    assert apply_move(T2, mv.inverse()) == T
    K = complete(4)
    P = SpanningSubtree(K, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(InvalidMove):
        apply_move(P, ExchangeMove.make([(2, 3)], [(0, 2)], MoveKind.LEAF_REATTACH))  # cycle 0-1-2, 3 cut off
    with pytest.raises(InvalidMove):
        apply_move(T, ExchangeMove.make([(0, 1)], [(1, 2)], MoveKind.LEAF_REATTACH))


def test_spider_branch_split():
    # spider: r = 0 with five two-vertex legs 0-v_i-w_i; host adds v_1 v_2
    edges = []
    attach = []
    for i in range(5):
        v, w = 1 + 2 * i, 2 + 2 * i
        edges += [(0, v), (v, w)]
        attach.append(v)
    G = build_graph(11, edges + [(attach[0], attach[1])])
    T = SpanningSubtree(G, edges)
    T2 = apply_move(T, ExchangeMove.make([(0, attach[0])], [(attach[0], attach[1])], MoveKind.BRANCH_MERGE))
    assert sorted(T2.degree(b) for b in metrics(T2).branches) == [3, 4]
    assert any(mv.remove == ((0, attach[0]),) and mv.add == ((attach[0], attach[1]),)
               for mv in enumerate_moves(G, T))


def test_potential_examples():
    assert potential_of(path(6), SpanningSubtree(path(6), path(6).edges())) == Potential(-6, 0, 0, 0)
    S = sharpness_graph(1)
    assert potential_of(S, SpanningSubtree(S, S.edges())) == (-6, 1, 1, 0)
    K = complete(8)
    seven = SpanningSubtree(K, [(0, i) for i in range(1, 7)] + [(6, 7)])  # 6 leaves + 1 branch
    six = SpanningSubtree(K, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (6, 7)])
    assert tree_score(seven) == 7 and tree_score(six) == 6
    assert potential_of(K, six) < potential_of(K, seven)
    three = SpanningSubtree(K, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (5, 6), (5, 7)])
    with pytest.raises(TooManyBranches):
        potential_of(K, three)


def test_leg_mass_component():
    # s = 0 of degree 4 (legs 1, 2-3, 4), t = 6 of degree 3; spine 0-5-6
    G = complete(10)
    T = SpanningSubtree(G, [(0, 1), (0, 2), (2, 3), (0, 4), (0, 5), (5, 6), (6, 7), (6, 8), (8, 9)])
    assert potential_of(G, T) == (-10, 2, 2, -4)


def test_solve_examples():
    r = solve(path(7))
    assert r.status is SolveStatus.SOLVED and r.score == 2
    r = solve(sharpness_graph(1))
    assert r.status is SolveStatus.STUCK_AT_SCORE and r.score == 6 and r.tree.is_spanning()
    with pytest.raises(DisconnectedGraph):
        solve(build_graph(4, [(0, 1), (2, 3)]))
    r = solve(build_graph(1, []))
    assert r.status is SolveStatus.SOLVED and r.score == 0


def test_stuck_not_spanning():
    r = solve(star(8))
    assert r.status is SolveStatus.STUCK_NOT_SPANNING
    assert r.score == 7 and len(r.tree) == 7


def test_iteration_cap():
    G = complete(6)
    start = SpanningSubtree(G, [], vertices=[0])
    r = solve(G, SolverConfig(max_iterations=2), initial_tree=start)
    assert r.status is SolveStatus.ITERATION_CAP_HIT and r.iterations == 2


def test_config_bounds():
    with pytest.raises(ValueError):
        SolverConfig(max_swap_size=5)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SolverConfig(seed=-1)
    assert SolverConfig().iteration_cap(7) == 490


def _random_start(G, rng):
    root = int(rng.integers(G.n))
    seen, edges, frontier = {root}, [], [(root, w) for w in G.adjacency[root]]
    while len(seen) < G.n:
        v, w = frontier.pop(int(rng.integers(len(frontier))))
        if w in seen:
            continue
        seen.add(w)
        edges.append((v, w))
        frontier += [(w, x) for x in G.adjacency[w] if x not in seen]
    return SpanningSubtree(G, edges, root=root)


def test_trace_potentials_decrease(rng):
    for seed in range(12):
        G = generate(FamilySpec("CliqueChain", {"cliques": 4, "hub": seed % 2, "lo": 3, "hi": 8}, seed))
        r = solve(G, SolverConfig(seed=seed, record_trace=True), initial_tree=_random_start(G, rng))
        pots = [e.potential for e in r.trace]
        assert all(a > b for a, b in zip(pots, pots[1:]))
        assert r.status is SolveStatus.SOLVED
        for e in r.trace:
            assert str(e).split()[0] == str(e.iteration)


def test_determinism():
    G = generate(FamilySpec("RandomRejection", {"n": 18}, 3))
    cfg = SolverConfig(seed=11, record_trace=True)
    a, b = solve(G, cfg), solve(G, cfg)
    assert a.tree == b.tree and a.trace_text() == b.trace_text() and a.iterations == b.iterations


def test_agrees_with_oracle_small(rng):
    seen = 0
    while seen < 60:
        G = gnp(int(rng.integers(5, 10)), float(rng.uniform(0.35, 0.7)), rng)
        if not check_hypotheses(G).all_ok:
            continue
        seen += 1
        r = solve(G, SolverConfig(seed=seen))
        o = min_score(G, target=5)
        assert o.feasible_le5
        assert r.status is SolveStatus.SOLVED and r.score <= 5 and len(metrics(r.tree).branches) <= 1


@pytest.mark.parametrize("targeted,max_swap", [(True, 4), (False, 1), (False, 2)])
def test_reaches_score_five_from_bad_starts(rng, targeted, max_swap):
    specs = [FamilySpec("CliqueChain", {"cliques": 4, "hub": h, "lo": 2, "hi": 10, "extra": e}, s)
             for h in (0, 1) for e in (0, 3) for s in range(4)]
    specs += [FamilySpec("LineGraph", {"base_n": 8}, s) for s in range(6)]
    for spec in specs:
        G = generate(spec)
        cfg = SolverConfig(seed=spec.seed, use_targeted_moves=targeted, max_swap_size=max_swap)
        r = solve(G, cfg, initial_tree=_random_start(G, rng))
        assert r.status is SolveStatus.SOLVED, spec.label()


def test_edge_normalisation_in_moves():
    mv = ExchangeMove.make([(3, 1)], [(2, 0)], MoveKind.LEAF_REATTACH)
    assert mv.remove == ((1, 3),) and mv.add == ((0, 2),)
    assert norm_edge(5, 2) == (2, 5)
    with pytest.raises(InvalidMove):
        ExchangeMove.make([], [(0, 1)], MoveKind.EXTEND, new_vertex=1).inverse()
