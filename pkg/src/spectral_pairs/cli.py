"""Command-line front end: one subcommand per analysis, JSON in, JSON out.

Exit codes: 0 success, 1 malformed input, 2 domain error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Callable, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from . import wire
from .elliptic import EllipticBundleSpec, Shape, pushforward_splitting
from .errors import DomainError
from .pairs import (
    BGType,
    FactoredSection,
    HitchinTuple,
    char_coefficients_det,
    char_coefficients_newton,
    chain_stability,
    cayley_hamilton_check,
    characteristic_polynomial,
    companion,
    cyclic_chain_build,
    grothendieck_constraint,
    power_traces,
    slope,
)
from .permgroups import block_systems, cyclic_cover_factorizable, group_elements, is_imprimitive, is_transitive
from .ratpoly import Poly
from .sections import Section, zero_profile
from .spectral import spectral_report
from .tower import enumerate_towers, fully_ramified_genus, plan_tower, pushforward_degree

log = logging.getLogger("spectral_pairs")

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2

RationalIn = Union[int, str]
SectionIn = Union[dict, list, int, str, None]


class Payload(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PairPayload(Payload):
    t: int
    bg: list[int]
    phi: list[list[SectionIn]]


class CompanionPayload(Payload):
    t: int
    s: list[SectionIn]


class FactorIn(Payload):
    poly: list[RationalIn]
    mult: int = 1


class ChainBuildPayload(Payload):
    t: int
    bg: list[int]
    s: SectionIn
    factors: Optional[list[FactorIn]] = None
    constant: Optional[RationalIn] = None


class ChainPayload(Payload):
    t: int
    bg: list[int]
    u: list[SectionIn]


class SpectralPayload(Payload):
    t: int
    r: int
    s: list[SectionIn]

    @field_validator("s")
    @classmethod
    def _length(cls, v, info):
        r = info.data.get("r")
        if r is not None and len(v) != r:
            raise ValueError(f"s must list {r} coefficients")
        return v


class BlocksPayload(Payload):
    gens: list[list[int]]


class CoverPayload(Payload):
    r: int


class TowerPayload(Payload):
    t: int
    r: int
    d: int
    m: Optional[int] = None
    p: Optional[int] = None


class EllipticPayload(Payload):
    rank: int
    degree: int
    shape: Literal["indecomposable", "decomposable_line_sum"] = "indecomposable"
    h0: Optional[int] = None
    line_degrees: Optional[tuple[int, int]] = None
    line_h0: Optional[tuple[int, int]] = None


def _tuple_from_json(t: int, entries: list) -> HitchinTuple:
    return HitchinTuple(t, tuple(wire.section_from_json(e, t * i) for i, e in enumerate(entries, start=1)))


def _pair_charpoly(p: PairPayload) -> dict:
    pair = wire.pair_from_json(p.t, p.bg, p.phi)
    newton = char_coefficients_newton(pair)
    det = char_coefficients_det(pair)
    return {
        "pair": wire.pair_to_json(pair),
        "power_traces": [wire.poly_to_json(q) for q in power_traces(pair)],
        "s_newton": wire.hitchin_to_json(newton),
        "s_det": wire.hitchin_to_json(det),
        "routes_agree": newton == det,
        "charpoly": wire.lambda_poly_to_json(characteristic_polynomial(pair)),
        "cayley_hamilton": cayley_hamilton_check(pair),
        "grothendieck_constraint": grothendieck_constraint(pair.bg, pair.t),
    }


def _pair_companion(p: CompanionPayload) -> dict:
    h = _tuple_from_json(p.t, p.s)
    pair = companion(h)
    back = char_coefficients_det(pair)
    return {
        "s": wire.hitchin_to_json(h),
        "pair": wire.pair_to_json(pair),
        "round_trip": back == h,
    }


def _chain_build(p: ChainBuildPayload) -> dict:
    bg = BGType(tuple(p.bg))
    k = p.t * bg.rank
    if p.factors is not None:
        const = wire.parse_rational(p.constant if p.constant is not None else 1)
        fs = FactoredSection(
            k, const, tuple((wire.poly_from_json(f.poly), f.mult) for f in p.factors)
        )
        if p.s is not None and wire.section_from_json(p.s, k) != fs.section():
            raise wire.InputError("the factors do not multiply to s")
    else:
        if p.s is None:
            raise wire.InputError("chain-build needs s or factors")
        sec = wire.section_from_json(p.s, k)
        if sec.is_zero():
            raise DomainError("cyclic chains are built for a nonzero s")
        fs = FactoredSection.split_rational(sec)
    chain = cyclic_chain_build(bg, p.t, fs)
    pair = chain.pair()
    det = char_coefficients_det(pair)
    return {
        "s": wire.section_to_json(fs.section()),
        "factors": [{"poly": wire.poly_to_json(f), "mult": e} for f, e in fs.factors],
        "constant": wire.format_rational(fs.constant),
        "capacities": chain.capacities,
        "chain": wire.chain_to_json(chain),
        "pair": wire.pair_to_json(pair),
        "charpoly": wire.lambda_poly_to_json(characteristic_polynomial(pair)),
        # lambda^r - s means s_r = -s
        "determinant_check": -det.s[-1].rep == fs.expand(),
        "stability": chain_stability(chain).value,
    }


def _chain_stability(p: ChainPayload) -> dict:
    chain = wire.chain_from_json(p.t, p.bg, p.u)
    return {
        "chain": wire.chain_to_json(chain),
        "slope": wire.format_rational(slope(chain.bg)),
        "grothendieck_constraint": grothendieck_constraint(chain.bg, chain.t),
        "stability": chain_stability(chain).value,
    }


def _spectral_report(p: SpectralPayload) -> dict:
    h = _tuple_from_json(p.t, p.s)
    rep = spectral_report(h)
    out = wire.spectral_report_to_json(rep)
    out["s"] = wire.hitchin_to_json(h)
    if not rep.discriminant_section.is_zero():
        out["discriminant_zeros"] = [wire.zero_to_json(z) for z in zero_profile(rep.discriminant_section)]
    return out


def _galois_blocks(p: BlocksPayload) -> dict:
    gens = [list(g) for g in p.gens]
    order = len(group_elements(gens))
    if not is_transitive(gens):
        raise DomainError("imprimitivity undefined for an intransitive group")
    imp = is_imprimitive(gens)
    return {
        "degree": len(gens[0]),
        "order": order,
        "transitive": True,
        "imprimitive": imp.verdict,
        "witness": wire.block_system_to_json(imp.witness),
        "block_systems": [wire.block_system_to_json(b) for b in block_systems(gens)],
    }


def _cover_factor(p: CoverPayload) -> dict:
    res = cyclic_cover_factorizable(p.r)
    return {
        "r": p.r,
        "factorizable": res.verdict,
        "factorizations": [list(f) for f in res.factorizations],
        "witnesses": [wire.block_system_to_json(b) for b in res.witnesses],
    }


def _tower_entry(plan) -> dict:
    out = wire.tower_to_json(plan)
    via_f = pushforward_degree(plan.d_prime, 1, plan.g_top, plan.g_mid, plan.m)
    via_g = pushforward_degree(via_f, plan.m, plan.g_mid, 0, plan.p)
    out["ledger"] = {"push_f": via_f, "push_g": via_g, "consistent": via_f == plan.d_dprime and via_g == plan.d}
    out["g_mid_hurwitz"] = fully_ramified_genus(plan.t * plan.r, plan.p)
    return out


def _tower_plan(p: TowerPayload) -> dict:
    if (p.m is None) != (p.p is None):
        raise wire.InputError("give both m and p, or neither")
    if p.m is None:
        return {"towers": [_tower_entry(plan) for plan in enumerate_towers(p.t, p.r, p.d)]}
    return _tower_entry(plan_tower(p.t, p.r, p.m, p.p, p.d))


def _elliptic_push(p: EllipticPayload) -> dict:
    spec = EllipticBundleSpec(p.rank, p.degree, Shape(p.shape), p.h0, p.line_degrees, p.line_h0)
    res = pushforward_splitting(spec)
    return {
        **wire.splitting_to_json(res),
        "sum": res.bg.degree,
        "grothendieck_constraint": grothendieck_constraint(res.bg, 2),
    }


COMMANDS: dict[str, tuple[type[Payload], Callable[[Any], dict], str]] = {
    "pair-charpoly": (PairPayload, _pair_charpoly, "characteristic coefficients by both routes"),
    "pair-companion": (CompanionPayload, _pair_companion, "companion pair of a Hitchin tuple"),
    "chain-build": (ChainBuildPayload, _chain_build, "cyclic chain with determinant s"),
    "chain-stability": (ChainPayload, _chain_stability, "stability verdict for a cyclic chain"),
    "spectral-report": (SpectralPayload, _spectral_report, "discriminant, genus and integrality"),
    "galois-blocks": (BlocksPayload, _galois_blocks, "block systems of a permutation group"),
    "cover-factor": (CoverPayload, _cover_factor, "factorizability of a cyclic cover"),
    "tower-plan": (TowerPayload, _tower_plan, "genus and degree ledger of a factored cover"),
    "elliptic-push": (EllipticPayload, _elliptic_push, "splitting type of a pushforward from an elliptic curve"),
}


def _failure(command: str, kind: str, message: str) -> dict:
    return {"command": command, "ok": False, "error": {"kind": kind, "message": message}}


def run(command: str, payload: dict) -> tuple[dict, int]:
    """Validate ``payload`` against the command's schema and run it."""
    if command not in COMMANDS:
        return _failure(command, "input", f"unknown command {command!r}"), EXIT_INPUT
    model, handler, _ = COMMANDS[command]
    try:
        parsed = model.model_validate(payload)
    except ValidationError as exc:
        return _failure(command, "input", str(exc)), EXIT_INPUT
    try:
        result = handler(parsed)
    except DomainError as exc:
        return _failure(command, "domain", str(exc)), EXIT_DOMAIN
    except (ValueError, TypeError, KeyError) as exc:
        return _failure(command, "input", str(exc)), EXIT_INPUT
    return {"command": command, "ok": True, "result": result}, EXIT_OK


def _flag_value(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-pairs",
        description="Exact computations with twisted pairs and spectral curves on P^1.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (model, _, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text, description=help_text)
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--payload", help="payload as a JSON object")
        src.add_argument("--payload-file", help="read the payload from a file ('-' for stdin)")
        for field in model.model_fields:
            sp.add_argument(
                f"--{field.replace('_', '-')}",
                dest=f"field_{field}",
                type=_flag_value,
                metavar="JSON",
                help=f"payload field '{field}'",
            )
    return parser


def _collect_payload(args: argparse.Namespace) -> dict:
    if args.payload is not None:
        payload = json.loads(args.payload)
    elif args.payload_file is not None:
        if args.payload_file == "-":
            payload = json.load(sys.stdin)
        else:
            with open(args.payload_file, encoding="utf-8") as fh:
                payload = json.load(fh)
    else:
        payload = {}
    if not isinstance(payload, dict):
        raise ValueError("payload must be a JSON object")
    for key, value in vars(args).items():
        if key.startswith("field_") and value is not None:
            payload[key[len("field_"):]] = value
    return payload


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        payload = _collect_payload(args)
    except (OSError, ValueError) as exc:
        report, code = _failure(args.command, "input", str(exc)), EXIT_INPUT
    else:
        report, code = run(args.command, payload)
    if not report["ok"]:
        print(f"error: {report['error']['message']}", file=sys.stderr)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
