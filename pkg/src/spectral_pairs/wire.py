"""JSON wire format: rationals as "p/q" strings, sections as {"k", "coeffs"}."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from .elliptic import SplittingResult
from .pairs import BGType, CyclicChain, HitchinTuple, TwistedPair
from .permgroups import BlockSystem
from .ratpoly import LambdaPoly, Poly
from .sections import INFINITY, Section, Zero
from .spectral import SpectralReport
from .tower import TowerPlan

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class InputError(ValueError):
    """Malformed request data."""


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise InputError(f"rationals are written as 'p/q' strings or integers, got {text!r}")
    match = _RATIONAL.match(text)
    if not match:
        raise InputError(f"malformed rational {text!r}")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def poly_to_json(p: Poly) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def poly_from_json(coeffs) -> Poly:
    if not isinstance(coeffs, list):
        raise InputError(f"coefficients must be a list, got {coeffs!r}")
    return Poly(parse_rational(c) for c in coeffs)


def section_to_json(s: Section) -> dict:
    return {"k": s.k, "coeffs": poly_to_json(s.rep)}


def section_from_json(obj, k: int | None = None) -> Section:
    """Accepts {"k", "coeffs"}, a bare coefficient list, or a single rational
    (the bare forms need the twist ``k`` from context)."""
    if isinstance(obj, dict):
        if "coeffs" not in obj or "k" not in obj:
            raise InputError(f"section needs 'k' and 'coeffs': {obj!r}")
        if k is not None and obj["k"] != k:
            raise InputError(f"section twist {obj['k']} where O({k}) is required")
        return Section(int(obj["k"]), poly_from_json(obj["coeffs"]))
    if k is None:
        raise InputError(f"cannot infer the twist of {obj!r}")
    if isinstance(obj, list):
        return Section(k, poly_from_json(obj))
    return Section(k, Poly([parse_rational(obj)]))


def lambda_poly_to_json(f: LambdaPoly) -> list[list[str]]:
    return [poly_to_json(c) for c in f.coeffs]


def hitchin_to_json(h: HitchinTuple) -> list[dict]:
    return [section_to_json(si) for si in h.s]


def pair_to_json(p: TwistedPair) -> dict:
    r = p.rank
    phi = []
    for i in range(r):
        row = []
        for j in range(r):
            sec = p.section(i, j)
            row.append(section_to_json(sec) if sec is not None else None)
        phi.append(row)
    return {"t": p.t, "bg": list(p.bg.m), "phi": phi}


def pair_from_json(t: int, bg: list[int], phi: list[list]) -> TwistedPair:
    b = BGType(tuple(bg))
    r = b.rank
    if len(phi) != r or any(len(row) != r for row in phi):
        raise InputError(f"phi must be a {r}x{r} array")
    rows = []
    for i in range(r):
        row = []
        for j in range(r):
            tw = b.m[i] - b.m[j] + t
            e = phi[i][j]
            if e is None:
                row.append(Poly())
            elif tw < 0:
                sec_poly = poly_from_json(e["coeffs"]) if isinstance(e, dict) else poly_from_json(e if isinstance(e, list) else [e])
                if sec_poly:
                    raise InputError(f"entry ({i},{j}) lives in O({tw}) and must be zero")
                row.append(Poly())
            else:
                row.append(section_from_json(e, tw).rep)
        rows.append(tuple(row))
    return TwistedPair(t, b, tuple(rows))


def chain_to_json(c: CyclicChain) -> dict:
    return {
        "t": c.t,
        "bg": list(c.bg.m),
        "u": [section_to_json(s) if s is not None else None for s in c.sections()],
    }


def chain_from_json(t: int, bg: list[int], u: list) -> CyclicChain:
    b = BGType(tuple(bg))
    from .pairs import chain_capacities

    caps = chain_capacities(b, t)
    if len(u) != len(caps):
        raise InputError(f"a chain on rank {len(caps)} needs {len(caps)} entries")
    polys = []
    for e, cap in zip(u, caps):
        if e is None:
            polys.append(Poly())
        elif cap < 0:
            p = poly_from_json(e["coeffs"] if isinstance(e, dict) else (e if isinstance(e, list) else [e]))
            if p:
                raise InputError(f"slot of twist {cap} must be zero")
            polys.append(Poly())
        else:
            polys.append(section_from_json(e, cap).rep)
    return CyclicChain(t, b, tuple(polys))


def zero_to_json(z: Zero) -> dict:
    if isinstance(z.place, Poly):
        place: Any = {"roots_of": poly_to_json(z.place)}
    elif z.place == INFINITY:
        place = INFINITY
    else:
        place = format_rational(z.place)
    return {"place": place, "multiplicity": z.multiplicity, "count": z.count}


def block_system_to_json(b: BlockSystem | None):
    return None if b is None else [list(block) for block in b.blocks]


def spectral_report_to_json(rep: SpectralReport) -> dict:
    out = {
        "t": rep.t,
        "r": rep.r,
        "discriminant": section_to_json(rep.discriminant_section),
        "smooth": rep.is_smooth_locus,
        "integral": rep.is_integral.value,
        "integrality_reason": rep.integrality_reason,
        "euler_char": rep.euler_char,
        "genus": rep.genus,
        "hurwitz_genus": rep.hurwitz_genus,
        "ramification": [{"multiplicity": m, "count": c} for m, c in rep.ramification],
        "cyclic": rep.cyclic,
        "diagnostics": list(rep.diagnostics),
    }
    if rep.certificate is not None:
        out["certificate"] = {
            "factor": lambda_poly_to_json(rep.certificate[0]),
            "cofactor": lambda_poly_to_json(rep.certificate[1]),
        }
    return out


def tower_to_json(plan: TowerPlan) -> dict:
    return {
        "t": plan.t,
        "r": plan.r,
        "m": plan.m,
        "p": plan.p,
        "d": plan.d,
        "g_top": plan.g_top,
        "g_mid": plan.g_mid,
        "d1": plan.d_prime,
        "d2": plan.d_dprime,
    }


def splitting_to_json(res: SplittingResult) -> dict:
    return {"bg": list(res.bg.m), "degree_check": res.degree_check}
