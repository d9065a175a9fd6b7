import mpmath
import pytest

import charlier

mpmath.mp.prec = 256


def mpf_list(values):
    return [mpmath.mpf(v) for v in values]


def test_recurrence_shape_and_convention():
    t = charlier.recurrence("N", "1", "1.5", n_max=6, prec_bits=256)
    assert t["source"] == "hankel"
    assert t["prec_bits"] == 256
    assert len(t["a2"]) == len(t["b"]) == 7
    assert mpmath.mpf(t["a2"][0]) == 0
    assert all(mpmath.mpf(x) > 0 for x in t["a2"][1:])


def test_first_coefficient_matches_bessel_ratio():
    # On the nonnegative integers b_0 = sqrt(a) I_beta(2 sqrt a) / I_{beta-1}(2 sqrt a).
    a, beta = mpmath.mpf(2), mpmath.mpf("0.7")
    expected = mpmath.sqrt(a) * mpmath.besseli(beta, 2 * mpmath.sqrt(a)) / mpmath.besseli(beta - 1, 2 * mpmath.sqrt(a))
    got = mpmath.mpf(charlier.initial_b0("N", "2", "0.7", prec_bits=256))
    assert abs(got - expected) < mpmath.mpf("1e-60")


@pytest.mark.parametrize("source", ["stieltjes", "recursion", "p5chain"])
def test_sources_agree_with_hankel(source):
    ref = charlier.recurrence("shifted", "1", "0.5", n_max=8, prec_bits=256)
    other = charlier.recurrence("shifted", "1", "0.5", source=source, n_max=8, prec_bits=256)
    assert other["source"] == source
    for x, y in zip(mpf_list(ref["b"]) + mpf_list(ref["a2"]), mpf_list(other["b"]) + mpf_list(other["a2"])):
        assert abs(x - y) < mpmath.mpf("1e-20")


def test_riccati_residual_is_at_rounding_level():
    r = mpmath.mpf(charlier.riccati_residual("bi", "1.3", "0.5", "2", prec_bits=256))
    assert abs(r) < mpmath.mpf(2) ** -240


def test_errors_map_to_python_exceptions():
    with pytest.raises(charlier.DomainError):
        charlier.recurrence("shifted", "1", "1")
    with pytest.raises(ValueError):
        charlier.recurrence("N", "-1", "1.5")
    with pytest.raises(ValueError):
        charlier.recurrence(source="qr")
    with pytest.raises(charlier.SingularityError):
        charlier.recurrence("bi", "1", "1.5", "1", source="recursion", n_max=5)
    assert issubclass(charlier.IntegrationError, charlier.SingularityError)


def test_verify_returns_a_passing_report():
    assert "riccati" in charlier.suite_names()
    rep = charlier.verify("riccati", a=["1", "2"], n_max=4, prec_bits=256)
    assert rep["suite"] == "riccati"
    assert rep["pass"] is True
    assert rep["prec_bits"] == 256
    assert rep["cells"]
    assert {"a", "beta", "lattice", "tau"} <= set(rep["cells"][0]["params"])


def test_unknown_suite():
    with pytest.raises(charlier.DomainError):
        charlier.verify("nonsense")
