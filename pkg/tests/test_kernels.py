import random

import pytest

from hypersparse._kernels import CGraphCore, PyGraphCore, HAVE_C_KERNEL

CORES = [PyGraphCore] + ([CGraphCore] if HAVE_C_KERNEL else [])


@pytest.mark.parametrize("core_cls", CORES)
def test_basic_ops(core_cls):
    g = core_cls(5)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    assert g.edge_count == 2
    assert g.has_edge(0, 1) and g.has_edge(1, 0)
    assert not g.has_edge(0, 2)
    assert g.has_path_within(0, 2, 2)
    assert not g.has_path_within(0, 2, 1)
    assert g.has_path_within(0, 0, 0)
    g.remove_edge(0, 1)
    assert g.edge_count == 1
    assert not g.has_path_within(0, 2, 5)
    with pytest.raises(KeyError):
        g.remove_edge(0, 1)


@pytest.mark.parametrize("core_cls", CORES)
def test_self_loop_rejected(core_cls):
    g = core_cls(3)
    with pytest.raises(ValueError):
        g.add_edge(1, 1)


@pytest.mark.skipif(not HAVE_C_KERNEL, reason="compiled kernel not built")
def test_kernel_equivalence_random_ops():
    rng = random.Random(1234)
    for _ in range(60):
        n = rng.randint(2, 24)
        a, b = CGraphCore(n), PyGraphCore(n)
        present = set()
        for _ in range(300):
            op = rng.random()
            if op < 0.5 or not present:
                u, v = rng.sample(range(n), 2)
                slot = (min(u, v), max(u, v))
                if slot not in present:
                    present.add(slot)
                    a.add_edge(u, v)
                    b.add_edge(u, v)
            elif op < 0.72:
                u, v = rng.choice(sorted(present))
                present.discard((u, v))
                a.remove_edge(u, v)
                b.remove_edge(u, v)
            else:
                u, v = rng.sample(range(n), 2)
                depth = rng.randint(0, 6)
                assert (a.has_path_within(u, v, depth)
                        == b.has_path_within(u, v, depth))
            assert a.edge_count == b.edge_count
        assert a.edges() == b.edges()


@pytest.mark.parametrize("core_cls", CORES)
def test_arena_reuse_after_many_deletions(core_cls):
    g = core_cls(10)
    for round_no in range(50):
        for u in range(9):
            g.add_edge(u, u + 1)
        assert g.has_path_within(0, 9, 9)
        for u in range(9):
            g.remove_edge(u, u + 1)
        assert g.edge_count == 0
