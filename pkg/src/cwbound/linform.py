"""Linear forms in orbit variables and symmetric blocks of them."""

from __future__ import annotations

from dataclasses import dataclass, field


class LinearForm:
    """const + sum coeff[i] * y_i with exact integer coefficients."""

    __slots__ = ("const", "coeffs")

    def __init__(self, const: int = 0, coeffs: dict[int, int] | None = None):
        self.const = const
        self.coeffs = coeffs if coeffs is not None else {}

    @staticmethod
    def variable(i: int, coeff: int = 1) -> "LinearForm":
        return LinearForm(0, {i: coeff}) if coeff else LinearForm()

    @staticmethod
    def constant(c: int) -> "LinearForm":
        return LinearForm(c)

    def add_term(self, i: int, coeff: int) -> None:
        """In-place accumulation; only for use while building."""
        if not coeff:
            return
        nc = self.coeffs.get(i, 0) + coeff
        if nc:
            self.coeffs[i] = nc
        else:
            del self.coeffs[i]

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = LinearForm(self.const + other.const, dict(self.coeffs))
        for i, c in other.coeffs.items():
            out.add_term(i, c)
        return out

    def scale(self, k: int) -> "LinearForm":
        if k == 0:
            return LinearForm()
        return LinearForm(self.const * k, {i: c * k for i, c in self.coeffs.items()})

    def divide_exact(self, k: int) -> "LinearForm":
        if self.const % k:
            raise ArithmeticError(f"constant {self.const} not divisible by {k}")
        out = {}
        for i, c in self.coeffs.items():
            q, r = divmod(c, k)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {k}")
            out[i] = q
        return LinearForm(self.const // k, out)

    def pin(self, fixed: dict[int, int]) -> "LinearForm":
        """Substitute fixed values for some variables."""
        const = self.const
        coeffs = {}
        for i, c in self.coeffs.items():
            if i in fixed:
                const += c * fixed[i]
            else:
                coeffs[i] = c
        return LinearForm(const, coeffs)

    def remap(self, table: dict[int, int]) -> "LinearForm":
        return LinearForm(self.const, {table[i]: c for i, c in self.coeffs.items()})

    def evaluate(self, y) -> float:
        return self.const + sum(c * y[i] for i, c in self.coeffs.items())

    def is_zero(self) -> bool:
        return self.const == 0 and not self.coeffs

    def key(self) -> tuple:
        return (self.const, tuple(sorted(self.coeffs.items())))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearForm)
            and self.const == other.const
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self) -> str:
        bits = []
        if self.const:
            bits.append(str(self.const))
        for i, c in sorted(self.coeffs.items()):
            bits.append(f"{c}*y{i}")
        return "LinearForm(" + (" + ".join(bits) if bits else "0") + ")"


@dataclass(frozen=True)
class Block:
    """Symmetric matrix of linear forms, or a diagonal bundle of them.

    kind is one of 'empty', 'pair', 'nonneg'; params carries the family
    data (s and the shape for empty blocks, t and the shape tuple for
    pair blocks); labels names the index set for reports.
    """

    kind: str
    params: tuple
    labels: tuple
    forms: tuple
    diag: bool = False

    @property
    def size(self) -> int:
        return len(self.forms)

    def entry(self, i: int, j: int) -> LinearForm:
        if self.diag:
            if i != j:
                return LinearForm()
            return self.forms[i]
        return self.forms[i][j]

    def check_symmetric(self) -> bool:
        if self.diag:
            return True
        for i in range(self.size):
            for j in range(i + 1, self.size):
                if self.forms[i][j] != self.forms[j][i]:
                    return False
        return True

    def variables(self) -> set[int]:
        out: set[int] = set()
        if self.diag:
            for f in self.forms:
                out.update(f.coeffs)
        else:
            for row in self.forms:
                for f in row:
                    out.update(f.coeffs)
        return out
