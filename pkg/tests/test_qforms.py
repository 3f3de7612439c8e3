import pytest

from l2latt.qforms import (
    DiagonalForm,
    FamilyHypothesisError,
    certify_anisotropic_family,
    family_form,
    family_pipeline,
    isotropy_search,
)


def test_signature():
    assert DiagonalForm((1, -1)).signature == (1, 1)
    assert family_form(3).signature == (3, 3)
    with pytest.raises(ValueError):
        DiagonalForm((1, 0, -1))


def test_rational_clearing():
    f = DiagonalForm.from_rationals(["1/2", "-1/3"])
    assert f.coefficients == (3, -2)
    # scaling preserves isotropy: <1/2, -1/2> isotropic iff <1, -1> is
    g = DiagonalForm.from_rationals(["1/2", "-1/2"])
    assert g.coefficients == (1, -1)
    assert isotropy_search(g, 1).verdict == "isotropic"


def test_hyperbolic_plane_witness():
    rep = isotropy_search(DiagonalForm((1, -1)), 1)
    assert rep.verdict == "isotropic"
    assert rep.witness == (1, 1)


def test_three_variable_witness():
    rep = isotropy_search(DiagonalForm((1, 1, -2)), 2)
    assert rep.witness == (1, 1, 1)
    assert DiagonalForm((1, 1, -2)).value(rep.witness) == 0


def test_no_zero_up_to():
    rep = isotropy_search(DiagonalForm((1, 1, -3, -3)), 50)
    assert rep.verdict == "no-zero-up-to"
    assert rep.height == 50
    assert rep.witness is None


def test_witness_minimality():
    # <4, -1>: zeros are (1, 2), (2, 4), ...; minimal sup-norm is 2
    rep = isotropy_search(DiagonalForm((4, -1)), 10)
    assert rep.witness == (1, 2)


def test_certify_family():
    for p in (3, 7, 11, 19, 23):
        rep = certify_anisotropic_family(p)
        assert rep.verdict == "certified-anisotropic"
        assert rep.certificate and len(rep.certificate) == 5
        assert rep.rule.startswith("two-squares-descent")


def test_certify_rejects_bad_primes():
    with pytest.raises(FamilyHypothesisError):
        certify_anisotropic_family(4)
    with pytest.raises(FamilyHypothesisError) as exc:
        certify_anisotropic_family(5)
    assert "search found the zero" in str(exc.value)
    with pytest.raises(FamilyHypothesisError):
        certify_anisotropic_family(2)


def test_search_consistency_with_certificates():
    for p in (3, 7, 11):
        rep = isotropy_search(DiagonalForm((1, 1, -p, -p)), 20)
        assert rep.verdict == "no-zero-up-to"


def test_pipeline_report():
    rep = family_pipeline(7, 100)
    assert rep["form"]["signature"] == [3, 3]
    assert rep["real_form"]["deficiency"] == 1
    assert rep["real_form"]["dim_X"] == 9
    assert rep["middle_degree"] == 4
    assert rep["restricted_type"] == "A1"
    assert rep["multiplicities"] == [4]
    assert rep["dim_N"] == 4
    assert rep["growth_degree"] == 4
    assert rep["levi_deficiency"] == 0
    assert rep["bound"] == 4
    assert rep["q_rank"] == 1
    assert rep["torsion"]["verdict"] == "OddOpen"
    form = DiagonalForm(tuple(rep["form"]["coefficients"]))
    assert form.value(rep["isotropy"]["witness"]) == 0


def test_pipeline_refuses_p5():
    with pytest.raises(FamilyHypothesisError):
        family_pipeline(5)
