import numpy as np
import pytest

from kp5 import (
    Field,
    ModeSumData,
    SolverConfig,
    duhamel_picard,
    evolve,
    make_grid,
    make_initial_data,
)
from kp5.errors import ContractionFailureError, ZeroMassViolationError


def _small_data(grid, l2_target=0.009):
    f = make_initial_data(grid, ModeSumData(modes=((1, 0, 1.0, 0.0), (1, 1, 0.5, 0.3))))
    return f * (l2_target / f.l2_norm())


def test_zero_data_converges_immediately(grid16, kp1):
    cfg = SolverConfig(dt=1e-3, t_final=0.01, cutoff_T=0.1)
    result = duhamel_picard(Field.zeros(grid16), cfg, kp1)
    assert result.converged
    assert result.distances == (0.0,)
    assert result.trajectory.final().l2_norm() == 0.0


def test_initial_iterate_matches_data_at_t0(grid32, kp1_alpha1):
    phi = _small_data(grid32)
    cfg = SolverConfig(dt=2e-3, t_final=0.05, cutoff_T=0.1, picard_tol=1e-13)
    result = duhamel_picard(phi, cfg, kp1_alpha1)
    assert (result.trajectory.states[0] - phi).l2_norm() <= 1e-13 * phi.l2_norm()


def test_small_data_contracts_geometrically(grid32, kp1_alpha1):
    phi = _small_data(grid32)
    assert phi.l2_norm() <= 1e-2
    cfg = SolverConfig(dt=1e-3, t_final=0.1, cutoff_T=0.1, picard_tol=1e-13, picard_max_iters=20)
    result = duhamel_picard(phi, cfg, kp1_alpha1)
    assert result.converged
    assert all(r < 1.0 for r in result.ratios)
    # distances never increase on a successful run
    for a, b in zip(result.distances, result.distances[1:]):
        assert b <= a


def test_quadrature_nodes_refine_grid(grid32, kp1_alpha1):
    phi = _small_data(grid32)
    cfg2 = SolverConfig(dt=2e-3, t_final=0.02, cutoff_T=0.1, quadrature_nodes=2)
    cfg5 = SolverConfig(dt=2e-3, t_final=0.02, cutoff_T=0.1, quadrature_nodes=5)
    r2 = duhamel_picard(phi, cfg2, kp1_alpha1)
    r5 = duhamel_picard(phi, cfg5, kp1_alpha1)
    assert len(r2.trajectory.times) == 11
    assert len(r5.trajectory.times) == 41
    # coarse nodes are a subset of the fine grid; compare the final time
    d = (r2.trajectory.final() - r5.trajectory.final()).l2_norm()
    assert d <= 1e-10


def test_fixed_point_matches_evolve(grid32, kp1_alpha1):
    phi = _small_data(grid32)
    cfg = SolverConfig(dt=2.5e-3, t_final=0.1, cutoff_T=0.1, picard_tol=1e-13, picard_max_iters=20)
    result = duhamel_picard(phi, cfg, kp1_alpha1)
    traj = evolve(phi, cfg, kp1_alpha1)
    t_max = 0.5 * cfg.cutoff_T
    worst = 0.0
    for i, t in enumerate(result.trajectory.times):
        if t <= t_max + 1e-12:
            j = int(round(float(t) / cfg.dt))
            worst = max(worst, (result.trajectory.states[i] - traj.states[j]).l2_norm())
    assert worst <= 1e-9


def test_contraction_failure_raises_with_advice(kp1_alpha1):
    grid = make_grid(32, 32, 2 * np.pi, 2 * np.pi)
    big = make_initial_data(
        grid,
        ModeSumData(modes=((1, 0, 30.0, 0.0), (1, 1, 24.0, 0.5), (2, 1, 18.0, 1.0), (1, 2, 12.0, 2.0))),
    )
    cfg = SolverConfig(dt=5e-3, t_final=0.5, cutoff_T=0.9, picard_tol=1e-13, picard_max_iters=30)
    with pytest.raises(ContractionFailureError) as err:
        duhamel_picard(big, cfg, kp1_alpha1)
    assert "cutoff_T" in str(err.value)
    assert len(err.value.distances) >= 2


def test_rejects_nonzero_x_mean(grid16, kp1):
    f = Field.from_physical(grid16, np.ones(grid16.shape))
    with pytest.raises(ZeroMassViolationError):
        duhamel_picard(f, SolverConfig(dt=1e-3, t_final=1e-2, cutoff_T=0.1), kp1)
