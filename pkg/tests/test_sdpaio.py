"""SDPA text emission, parsing, and solver-log scraping."""

import pytest

from cwbound.assembler import assemble
from cwbound.orbits import registry
from cwbound.sdpaio import (
    SdpaParseError,
    fold_program,
    maximization_value,
    parse_sdpa,
    parse_solver_output,
    to_sdpa,
)

TOYS = [
    (3, 2, 1), (4, 2, 1), (4, 2, 2), (5, 2, 2), (5, 4, 2),
    (6, 4, 3), (6, 2, 3), (7, 4, 3), (8, 6, 4), (8, 4, 3),
]


def toy_programs():
    progs = []
    for n, d, w in TOYS:
        for variant in ("a2", "a3"):
            progs.append(assemble(n, d, w, variant=variant))
    return progs


def test_golden_toy_file():
    text = to_sdpa(assemble(3, 2, 1, variant="a2", formulation="raw"))
    lines = text.splitlines()
    assert lines[0] == '"cwbound n=3 d=2 w=1 variant=a2 formulation=raw'
    assert lines[1].startswith('"registry sha=') and lines[1].endswith(" vars=2")
    assert lines[2] == '"objective constant=0'
    assert lines[3:] == [
        "2",
        "3",
        "2 1 -2",
        "-3 0",
        "0 1 1 1 -1",
        "1 1 1 2 3",
        "1 1 2 2 3",
        "1 2 1 1 2",
        "1 3 1 1 1",
        "2 1 2 2 6",
        "2 2 1 1 -2",
        "2 3 2 2 1",
    ]
    assert text.endswith("\n")


def test_emission_is_byte_deterministic():
    a = to_sdpa(assemble(8, 4, 3, variant="b4"))
    b = to_sdpa(assemble(8, 4, 3, variant="b4"))
    assert a == b
    registry.cache_clear()
    assert to_sdpa(assemble(8, 4, 3, variant="b4")) == a


def test_integer_entries_only():
    # normalized and pinned divide through by binomials yet stay integral,
    # so no float repr ever reaches the file
    for prog in toy_programs():
        for line in to_sdpa(prog).splitlines()[3:]:
            for tok in line.split():
                int(tok)


def test_round_trip_matches_fold():
    for prog in toy_programs():
        folded, bvec, b0, free = fold_program(prog)
        data = parse_sdpa(to_sdpa(prog))
        assert data.m == len(free)
        assert data.block_sizes == tuple(
            -fb.size if fb.diag else fb.size for fb in folded
        )
        assert data.c == tuple(-c for c in bvec)
        assert int(data.header["constant"]) == b0
        expected = []
        for bno, fb in enumerate(folded, start=1):
            for i, j, v in fb.const:
                expected.append((0, bno, i + 1, j + 1, -v))
        for k in range(len(free)):
            for bno, fb in enumerate(folded, start=1):
                for var, entries in fb.per_var:
                    if var == k:
                        for i, j, v in entries:
                            expected.append((k + 1, bno, i + 1, j + 1, v))
        assert list(data.entries) == expected


def test_header_fields():
    data = parse_sdpa(to_sdpa(assemble(6, 4, 3, variant="a3")))
    assert data.header["n"] == "6"
    assert data.header["d"] == "4"
    assert data.header["w"] == "3"
    assert data.header["variant"] == "a3"
    assert data.header["formulation"] == "normalized"
    assert len(data.header["sha"]) == 16


def test_constraint_slice():
    data = parse_sdpa(to_sdpa(assemble(3, 2, 1, variant="a2", formulation="raw")))
    assert data.constraint(0) == ((0, 1, 1, 1, -1),)
    assert all(e[0] == 2 for e in data.constraint(2))


def test_parse_accepts_comment_styles_and_commas():
    text = "\n".join([
        "* free-form comment",
        '"quoted comment',
        "1",
        "2",
        "{2, -1}",
        "(-3.0)",
        "0 1 1 2 -1.5",
        "1 1 1 1 2",
        "1 2 1 1 1",
    ])
    data = parse_sdpa(text)
    assert data.m == 1
    assert data.block_sizes == (2, -1)
    assert data.c == (-3.0,)
    assert data.entries == ((0, 1, 1, 2, -1.5), (1, 1, 1, 1, 2), (1, 2, 1, 1, 1))


MALFORMED = [
    ("", "missing header"),
    ("x\n1\n1\n1\n", "bad variable"),
    ("1\n2\n2\n-3\n", "expected 2 block sizes"),
    ("2\n1\n2\n-3\n", "expected 2 objective entries"),
    ("1\n1\n2\n-3\n0 1 1 2\n", "expected 5 fields"),
    ("1\n1\n2\n-3\n2 1 1 2 1\n", "matrix index 2 outside"),
    ("1\n1\n2\n-3\n1 2 1 1 1\n", "block 2 outside"),
    ("1\n1\n2\n-3\n1 1 1 3 1\n", "outside block of size 2"),
    ("1\n1\n-2\n-3\n1 1 1 3 1\n", "outside block of size 2"),
    ("1\n1\n2\n-3\n1 1 2 1 1\n", "row <= col"),
]


@pytest.mark.parametrize("text,msg", MALFORMED)
def test_parse_rejects_malformed(text, msg):
    with pytest.raises(SdpaParseError, match=msg):
        parse_sdpa(text)


SOLVER_LOG = """\
SDPA start at ...
phase.value  = pdOPT
   objValPrimal = -8.2923089040e+01
   objValDual   = -8.2923089041e+01
p.feas.error =  1.0e-12
"""


def test_parse_solver_output():
    out = parse_solver_output(SOLVER_LOG)
    assert out.status == "pdOPT"
    assert out.ok
    assert out.primal == pytest.approx(-82.923089040)
    assert out.dual == pytest.approx(-82.923089041)
    assert maximization_value(out) == pytest.approx(82.923089040)
    assert maximization_value(out, objective_constant=1) == pytest.approx(83.923089040)


def test_parse_solver_output_statuses():
    assert parse_solver_output(
        "objValPrimal = -1\nobjValDual = -1\nphase.value = pdFEAS\n"
    ).ok
    assert not parse_solver_output(
        "objValPrimal = -1\nobjValDual = -1\nphase.value = dUNBD\n"
    ).ok


def test_parse_solver_output_truncated():
    out = parse_solver_output("SDPA start\nphase.value = pdOPT\n")
    assert out.status == "unparsed"
    assert not out.ok
    with pytest.raises(ValueError):
        maximization_value(out)
    assert parse_solver_output("objValPrimal = oops\n").status == "unparsed"
