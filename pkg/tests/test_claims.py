import pytest

from simpson_nd.claims import CLAIMS, Claim, _evaluate, run_claims, weight_map
from simpson_nd.errors import UnknownRule
from simpson_nd.models.rule import cr2, named_rule, triangle_midedge


@pytest.mark.parametrize("claim", CLAIMS, ids=lambda c: c.name)
def test_claim_is_confirmed(claim):
    confirmed, detail = claim.check()
    assert confirmed, detail


def test_threaded_run_keeps_suite_order():
    names = ["moments", "cr4", "cr1", "interpolation"]
    results = run_claims(workers=3, names=names)
    assert [r.name for r in results] == ["cr1", "cr4", "interpolation", "moments"]
    assert all(r.confirmed for r in results)
    assert results[0].line().startswith("✓ cr1: ")


def test_unknown_names_select_nothing():
    assert run_claims(names=["no-such-claim"]) == []


def test_domain_errors_become_unconfirmed_results():
    def broken():
        named_rule("CR9")

    result = _evaluate(Claim("broken", "raises", broken))
    assert not result.confirmed
    assert result.detail.startswith(UnknownRule.__name__)
    assert result.line().startswith("✗ broken: ")
    assert result.to_dict()["confirmed"] is False


def test_weight_map_ignores_node_order():
    assert weight_map(cr2(2)) == weight_map(triangle_midedge())
