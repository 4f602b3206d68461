"""The acceptance gate: every criterion must pass at its stated tolerance.

Each criterion prints one pass/fail line (pytest -v shows them per test);
the same functions back the `qcycle accept` command.
"""

import pytest

from qcycle import acceptance


@pytest.mark.parametrize("criterion", acceptance.ALL_CRITERIA,
                         ids=[fn.__name__ for fn in acceptance.ALL_CRITERIA])
def test_criterion(criterion):
    res = criterion()
    print("%s %s: %s" % ("PASS" if res.passed else "FAIL", res.ident, res.title))
    for line in res.lines:
        print("   " + line)
    assert res.passed, "\n".join(res.lines)


def test_conventions_artifact_shape():
    from qcycle import conventions

    table = conventions.as_json()
    assert set(table["oracle_family_scalars"]) == {
        "xminus", "xminus2", "xplus", "xplus2", "aplus", "aminus"
    }
    assert table["tower_scalars"]["jplus"] == "1"
    assert table["schur_word_scalars"]["1"] == "w"
