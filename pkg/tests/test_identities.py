import json

from relvlasov.algebra import run_catalog


def test_full_catalog_proves_everything():
    report = run_catalog()
    failures = [r for r in report.results if r.status != "PROVED"]
    assert not failures, "\n".join(f"{r.identity_id}: {r.residual_terms}" for r in failures)


def test_catalog_block_counts():
    report = run_catalog()
    counts = report.counts()
    # 11 weights + morawetz
    assert counts["transport-annihilation"]["PROVED"] == 12
    # 9 fields x 11 weights
    assert counts["lift-membership"]["PROVED"] == 99
    # 4 translations + 3 rotations + S + S_v
    assert counts["commutators"]["PROVED"] == 9
    assert counts["null-decomposition"]["PROVED"] == 3
    assert counts["radial-recovery"]["PROVED"] == 1


def test_catalog_is_fast_and_serializable():
    report = run_catalog()
    assert report.elapsed_seconds < 10.0
    payload = json.loads(report.to_json())
    assert payload["all_proved"] is True
    assert len(payload["identities"]) == 124
    sample = payload["identities"][0]
    assert set(sample) == {"identity_id", "block", "status", "detail", "residual_terms"}
