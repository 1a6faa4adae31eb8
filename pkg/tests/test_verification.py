import pytest

from abflux.verification import SUITES, CaseResult, run_suite, suite_frames


def test_stokes_suite_cases_pass():
    cases = run_suite("stokes", seed=3, count=3)
    assert len(cases) == 3
    for c in cases:
        assert isinstance(c, CaseResult)
        assert c.passed
        assert c.residual <= c.tol == 1e-8
        assert c.name.startswith("stokes")


def test_gauge_suite_cases_pass():
    cases = run_suite("gauge", seed=1, count=2)
    # The fixed chi = x*t case is always prepended to the random ones.
    assert len(cases) == 3
    assert all(c.passed for c in cases)
    assert all(c.tol == 1e-9 for c in cases)


def test_vector3d_suite_cases_pass():
    cases = run_suite("vector3d", seed=2, count=2)
    # count divergence cases plus count curl cases.
    assert len(cases) == 4
    names = {c.name.split("[")[0] for c in cases}
    assert names == {"divergence", "curl"}
    assert all(c.passed for c in cases)


def test_suite_results_are_seed_deterministic():
    first = run_suite("stokes", seed=7, count=2)
    again = run_suite("stokes", seed=7, count=2)
    assert [(c.name, c.residual) for c in first] == [
        (c.name, c.residual) for c in again
    ]
    other = run_suite("stokes", seed=8, count=2)
    assert [c.residual for c in other] != [c.residual for c in first]


def test_unknown_suite_is_rejected():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("nope")


def test_registry_names_are_stable():
    assert set(SUITES) == {"stokes", "gauge", "frames", "vector3d"}


def test_frames_suite_rest_cases_pass():
    # The full speed ladder is exercised by the acceptance suite; here we
    # keep the runtime down and check the structure at rest only.
    cases = suite_frames(speeds=(0.0,))
    assert len(cases) == 4  # two scenarios: one flux case + one route case each
    names = sorted(c.name for c in cases)
    assert any("solenoid" in n for n in names)
    assert any("capacitor" in n for n in names)
    assert any("route" in n for n in names)
    for c in cases:
        assert c.passed, f"{c.name}: residual {c.residual:.3e} > tol {c.tol:.1e}"
