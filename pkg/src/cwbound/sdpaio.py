"""Serialization to the sparse SDPA text format and solver-log parsing.

The maximization "b'y + b0 with sum y_i A_i + A_const >= 0 per block"
maps onto the format's "minimize c'x with sum x_i F_i - F0 >= 0" via
c = -b, F_i = A_i and F0 = -A_const.  The objective constant b0 has no
slot in the format, so it rides in a header comment and is restored
when interpreting solver output.  Writing is canonical: fixed header,
fixed entry order, integers printed exactly; identical programs give
byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass

from .assembler import SdpProgram
from .linform import Block


@dataclass(frozen=True)
class FoldedBlock:
    """One block as numeric data over dense variable columns."""

    size: int
    diag: bool
    const: tuple[tuple[int, int, int], ...]
    per_var: tuple[tuple[int, tuple[tuple[int, int, int], ...]], ...]


def fold_program(prog: SdpProgram):
    """(folded blocks, b vector over free ids, b0, free ids)."""
    free = prog.free_ids
    col = {oid: k for k, oid in enumerate(free)}
    folded = []
    for b in prog.blocks:
        const: list[tuple[int, int, int]] = []
        per: dict[int, list[tuple[int, int, int]]] = {}
        for i in range(b.size):
            js = (i,) if b.diag else range(i, b.size)
            for j in js:
                f = b.entry(i, j)
                if f.const:
                    const.append((i, j, f.const))
                for oid, cf in sorted(f.coeffs.items()):
                    per.setdefault(col[oid], []).append((i, j, cf))
        folded.append(
            FoldedBlock(
                size=b.size,
                diag=b.diag,
                const=tuple(const),
                per_var=tuple((k, tuple(v)) for k, v in sorted(per.items())),
            )
        )
    bvec = [0] * len(free)
    for oid, cf in prog.objective.coeffs.items():
        bvec[col[oid]] = cf
    return folded, tuple(bvec), prog.objective.const, free


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def to_sdpa(prog: SdpProgram) -> str:
    folded, bvec, b0, free = fold_program(prog)
    lines = [
        f'"cwbound n={prog.n} d={prog.d} w={prog.w} '
        f"variant={prog.variant} formulation={prog.formulation}",
        f'"registry sha={prog.registry.sha()} vars={len(free)}',
        f'"objective constant={b0}',
        str(len(free)),
        str(len(folded)),
        " ".join(str(-fb.size if fb.diag else fb.size) for fb in folded),
        " ".join(_fmt(-c) for c in bvec),
    ]
    # F0 = -A_const, then F_i = A_i in dense variable order
    for bno, fb in enumerate(folded, start=1):
        for i, j, v in fb.const:
            lines.append(f"0 {bno} {i + 1} {j + 1} {_fmt(-v)}")
    for k in range(len(free)):
        for bno, fb in enumerate(folded, start=1):
            for var, entries in fb.per_var:
                if var != k:
                    continue
                for i, j, v in entries:
                    lines.append(f"{k + 1} {bno} {i + 1} {j + 1} {_fmt(v)}")
    return "\n".join(lines) + "\n"


def write_sdpa(prog: SdpProgram, path) -> None:
    with open(path, "w") as fh:
        fh.write(to_sdpa(prog))


@dataclass(frozen=True)
class SdpaData:
    m: int
    block_sizes: tuple[int, ...]
    c: tuple
    entries: tuple  # (matrix index 0..m, block 1-based, row, col, value)
    header: dict

    def constraint(self, k: int):
        return tuple(e for e in self.entries if e[0] == k)


class SdpaParseError(ValueError):
    pass


def _tokens(line: str):
    for ch in ",{}()":
        line = line.replace(ch, " ")
    return line.split()


def _num(tok: str):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def parse_sdpa(text: str) -> SdpaData:
    header: dict = {}
    rows: list[list[str]] = []
    lineno_of: list[int] = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith('"') or line.startswith("*"):
            for part in line.lstrip('"*').split():
                if "=" in part:
                    k, v = part.split("=", 1)
                    header[k] = v
            continue
        rows.append(_tokens(line))
        lineno_of.append(no)

    def bad(idx: int, msg: str):
        raise SdpaParseError(f"line {lineno_of[idx]}: {msg}")

    if len(rows) < 4:
        raise SdpaParseError("missing header lines")
    try:
        m = int(rows[0][0])
        nblocks = int(rows[1][0])
    except (ValueError, IndexError):
        raise SdpaParseError("bad variable or block count line")
    sizes = tuple(int(t) for t in rows[2])
    if len(sizes) != nblocks:
        bad(2, f"expected {nblocks} block sizes, got {len(sizes)}")
    c = tuple(_num(t) for t in rows[3])
    if len(c) != m:
        bad(3, f"expected {m} objective entries, got {len(c)}")
    entries = []
    for idx in range(4, len(rows)):
        toks = rows[idx]
        if len(toks) != 5:
            bad(idx, f"expected 5 fields, got {len(toks)}")
        k, b, i, j = (int(t) for t in toks[:4])
        v = _num(toks[4])
        if not 0 <= k <= m:
            bad(idx, f"matrix index {k} outside 0..{m}")
        if not 1 <= b <= nblocks:
            bad(idx, f"block {b} outside 1..{nblocks}")
        dim = abs(sizes[b - 1])
        if not (1 <= i <= dim and 1 <= j <= dim):
            bad(idx, f"entry ({i},{j}) outside block of size {dim}")
        if i > j:
            bad(idx, "entries must have row <= col")
        entries.append((k, b, i, j, v))
    return SdpaData(m=m, block_sizes=sizes, c=c, entries=tuple(entries), header=header)


@dataclass(frozen=True)
class SolverOutput:
    primal: float | None
    dual: float | None
    status: str

    @property
    def ok(self) -> bool:
        return self.status in ("pdOPT", "pdFEAS")


def parse_solver_output(text: str) -> SolverOutput:
    primal = dual = None
    status = "unparsed"
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("objValPrimal"):
            try:
                primal = float(line.split("=", 1)[1].strip())
            except (IndexError, ValueError):
                return SolverOutput(None, None, "unparsed")
        elif line.startswith("objValDual"):
            try:
                dual = float(line.split("=", 1)[1].strip())
            except (IndexError, ValueError):
                return SolverOutput(None, None, "unparsed")
        elif line.startswith("phase.value"):
            try:
                status = line.split("=", 1)[1].strip()
            except IndexError:
                return SolverOutput(None, None, "unparsed")
    if primal is None or dual is None:
        return SolverOutput(primal, dual, "unparsed")
    return SolverOutput(primal, dual, status)


def maximization_value(out: SolverOutput, objective_constant: int = 0) -> float:
    """Undo the minimize-side sign flip applied by to_sdpa."""
    if out.primal is None:
        raise ValueError("no primal value parsed")
    return -out.primal + objective_constant
