import json

import pytest

from superwp.verify import FAIL, FLAGGED, SUITES, VerifyReport, run_suite


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes(suite):
    rep = run_suite(suite)
    assert rep.exit_status == 0, rep.summary()
    assert rep.count(FAIL) == 0
    assert rep.items


def test_kernels_suite_flags_misprint():
    rep = run_suite("kernels")
    flagged = [i for i in rep.items if i.status == FLAGGED]
    assert any("R moment k=2" in i.check_id for i in flagged)


def test_flagged_items_do_not_fail():
    rep = VerifyReport("demo")
    rep.flag("known misprint", 1, 2)
    assert rep.exit_status == 0
    rep.check("broken", False, 1, 2)
    assert rep.exit_status == 1
    data = json.loads(json.dumps(rep.to_json()))
    assert data["counts"] == {"pass": 0, "fail": 1, "flagged": 1}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
