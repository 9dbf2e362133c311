"""JSON encodings and polynomial text used by the CLI and file formats.

Field elements encode as a bare residue for prime fields and as the k-entry
coordinate array (constant coordinate first) for extensions.  Polynomials
encode as coefficient arrays, constant term first.  Polynomial text uses
caret powers with `w` for the extension generator, e.g. `x^3 + 2*x + 1` or
`w^16*x^18 + x + w^6`.
"""

from __future__ import annotations

import re

from .cwaffine import CosetWiseAffineMap, Splitting
from .gf import FieldCtx, FieldElement, Poly, field
from .linalg import AffineMap, MatrixQ, VectorQ


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def ctx_to_json(ctx: FieldCtx) -> dict:
    out = {"p": ctx.p, "k": ctx.k}
    if ctx.k > 1:
        out["modulus"] = list(ctx.modulus)
    return out


def ctx_from_json(obj) -> FieldCtx:
    p = int(obj["p"])
    k = int(obj.get("k", 1))
    modulus = obj.get("modulus")
    return field(p, k, tuple(modulus) if modulus is not None else None)


def elem_to_json(x: FieldElement):
    if x.ctx.k == 1:
        return x.coeffs[0]
    return list(x.coeffs)


def elem_from_json(ctx: FieldCtx, obj) -> FieldElement:
    if isinstance(obj, int):
        return ctx.elem(obj)
    return ctx.elem(tuple(obj))


def vector_to_json(v: VectorQ) -> list:
    return [elem_to_json(e) for e in v.entries]


def vector_from_json(ctx: FieldCtx, obj) -> VectorQ:
    return VectorQ(ctx, [elem_from_json(ctx, e) for e in obj])


def matrix_to_json(M: MatrixQ) -> list:
    return [[elem_to_json(M.entry(i, j)) for j in range(M.cols)] for i in range(M.rows)]


def matrix_from_json(ctx: FieldCtx, obj) -> MatrixQ:
    return MatrixQ(ctx, [[elem_from_json(ctx, e) for e in row] for row in obj])


def affine_to_json(f: AffineMap) -> dict:
    return {"matrix": matrix_to_json(f.matrix), "shift": vector_to_json(f.shift)}


def affine_from_json(ctx: FieldCtx, obj) -> AffineMap:
    return AffineMap(matrix_from_json(ctx, obj["matrix"]),
                     vector_from_json(ctx, obj["shift"]))


def poly_to_json(P: Poly) -> list:
    return [elem_to_json(c) for c in P.coeffs]


def poly_from_json(ctx: FieldCtx, obj) -> Poly:
    return Poly(ctx, [elem_from_json(ctx, c) for c in obj])


def cwmap_to_json(f: CosetWiseAffineMap) -> dict:
    s = f.splitting
    cosets = []
    for u in s.coset_labels():
        alpha, omega, nu = f.per_coset[u]
        cosets.append({
            "u": list(u),
            "alpha": matrix_to_json(alpha),
            "omega": vector_to_json(omega),
            "nu": vector_to_json(nu),
        })
    return {"p": s.p, "d": s.d, "t": s.t, "cosets": cosets}


def cwmap_from_json(obj) -> CosetWiseAffineMap:
    s = Splitting(int(obj["p"]), int(obj["d"]), int(obj["t"]))
    ctx = s.ctx
    per = {}
    for item in obj["cosets"]:
        u = tuple(int(c) for c in item["u"])
        per[u] = (matrix_from_json(ctx, item["alpha"]),
                  vector_from_json(ctx, item["omega"]),
                  vector_from_json(ctx, item["nu"]))
    return CosetWiseAffineMap(s, per)


# ---------------------------------------------------------------------------
# Polynomial text
# ---------------------------------------------------------------------------

def format_elem(x: FieldElement) -> str:
    """Residue for prime-subfield values, else a power of the generator."""
    if x.in_prime_subfield():
        return str(x.coeffs[0])
    try:
        return f"w^{x.ctx.dlog(x)}"
    except ValueError:
        return str(list(x.coeffs))


def format_poly(P: Poly, var: str = "x") -> str:
    """Canonical text: descending powers joined with ' + ', unit coefficients
    omitted, extension coefficients as generator powers."""
    if P.is_zero():
        return "0"
    terms = []
    one = P.ctx.one()
    for d in range(len(P.coeffs) - 1, -1, -1):
        c = P.coeffs[d]
        if c.is_zero():
            continue
        if d == 0:
            terms.append(format_elem(c))
        else:
            xpart = var if d == 1 else f"{var}^{d}"
            terms.append(xpart if c == one else f"{format_elem(c)}*{xpart}")
    return " + ".join(terms)


_TERM_RE = re.compile(
    r"^(?:(?P<coef>\d+|w(?:\^(?P<wexp>\d+))?)\*?)?"
    r"(?:(?P<var>[A-Za-z])(?:\^(?P<exp>\d+))?)?$"
)


def parse_poly(text: str, ctx: FieldCtx, var: str = None) -> Poly:
    """Parse caret-power polynomial text over the given field.

    Accepts any single-letter variable (other than `w`, the generator),
    integer or generator-power coefficients, and +/- signs.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    coeffs: dict[int, FieldElement] = {}
    varname = var
    for raw in s.split("+"):
        if not raw:
            raise ValueError(f"malformed polynomial text {text!r}")
        negate = raw.startswith("-")
        if negate:
            raw = raw[1:]
        m = _TERM_RE.match(raw)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"malformed polynomial term {raw!r}")
        coef_txt = m.group("coef")
        if coef_txt is None:
            coef = ctx.one()
        elif coef_txt.startswith("w"):
            if ctx.k == 1:
                raise ValueError("generator powers need an extension field")
            exp = int(m.group("wexp")) if m.group("wexp") else 1
            coef = ctx.gen() ** exp
        else:
            coef = ctx.elem(int(coef_txt))
        v = m.group("var")
        if v is not None:
            if v == "w":
                raise ValueError("w denotes the field generator, not the variable")
            if varname is None:
                varname = v
            elif v != varname:
                raise ValueError(f"mixed variables {varname!r} and {v!r}")
            deg = int(m.group("exp")) if m.group("exp") else 1
        else:
            deg = 0
        if negate:
            coef = -coef
        coeffs[deg] = coeffs.get(deg, ctx.zero()) + coef
    top = max(coeffs) if coeffs else 0
    return Poly(ctx, [coeffs.get(i, ctx.zero()) for i in range(top + 1)])
