"""Command-line interface.

Exit codes: 0 success or true verdict, 2 false verdict or a Failed
rectification with certificate, 3 undecided or budget exhausted, 4 input
error.  Output is JSON with sorted keys, so identical invocations produce
identical bytes.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import chains
from .conic import Conic, ProjPoint, check_normalization, normalize_conic
from .corpus import WordSampler, random_word
from .curves import CurveError, curve_from_json, line_L0, line_L1
from .fields import FieldError, FieldSpec, RATIONALS, field_of
from .group import (
    GroupError,
    apply_word_curve,
    apply_word_point,
    invert_word,
    normal_form,
    scaling_character,
    word_from_json,
)
from .lines import FAILED, embedding_report, exotic_line, rectify
from .poly import PolyError
from .subalgebra import UNDECIDED

log = logging.getLogger("conic_complement")

EXIT_OK, EXIT_FALSE, EXIT_UNDECIDED, EXIT_INPUT = 0, 2, 3, 4


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    field: FieldSpec = RATIONALS
    budget: int = 500
    caps: Optional[tuple] = None  # (components, depth) for chain searches
    seed: int = 0
    output: Optional[str] = None

    def __post_init__(self):
        if self.budget < 1:
            raise InputError("budget must be at least 1")
        if self.caps is not None and min(self.caps) < 1:
            raise InputError("caps must be at least 1")


def load_payload(arg: str):
    """A path, '-' for stdin, or inline JSON text."""
    if arg == "-":
        text = sys.stdin.read()
    else:
        p = Path(arg)
        text = p.read_text() if p.is_file() else arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e


def _parse_caps(text):
    if text is None:
        return None
    try:
        parts = tuple(int(v) for v in text.split(","))
    except ValueError as e:
        raise InputError(f"--caps expects COMPONENTS,DEPTH, got {text!r}") from e
    if len(parts) != 2:
        raise InputError(f"--caps expects COMPONENTS,DEPTH, got {text!r}")
    return parts


def _word_payload(payload, cfg):
    arr = payload["word"] if isinstance(payload, dict) else payload
    return word_from_json(arr, cfg.field)


def _curve_payload(payload, cfg):
    if isinstance(payload, str) and payload in ("L0", "L1"):
        return line_L0(cfg.field) if payload == "L0" else line_L1(cfg.field)
    if not isinstance(payload, dict):
        raise InputError("curve payload must be a JSON object")
    return curve_from_json(payload, cfg.field)


# ---------------------------------------------------------------------------
# commands; each returns (json-able result, exit code)


def cmd_verify(payload, cfg: Config):
    try:
        j = _curve_payload(payload, cfg)
    except CurveError as e:
        return {"valid_in_S0": False, "reason": e.code, "detail": str(e)}, EXIT_FALSE
    rep = embedding_report(j)
    status = rep.closed_embedding.status
    code = {"true": EXIT_OK, "false": EXIT_FALSE, UNDECIDED: EXIT_UNDECIDED}[status]
    return rep.to_json(), code


def cmd_rectify(payload, cfg: Config):
    try:
        j = _curve_payload(payload, cfg)
    except CurveError as e:
        return {"valid_in_S0": False, "reason": e.code, "detail": str(e)}, EXIT_FALSE
    res = rectify(j, cfg.budget)
    if res.outcome != FAILED:
        return res.to_json(), EXIT_OK
    if res.diagnostics.get("reason") == "budget_exhausted":
        return res.to_json(), EXIT_UNDECIDED
    return res.to_json(), EXIT_FALSE


def cmd_word(action, payload, cfg: Config):
    if action == "normalize":
        nf = normal_form(_word_payload(payload, cfg))
        return nf.to_json(), EXIT_OK
    if action == "invert":
        return invert_word(_word_payload(payload, cfg)).to_json(), EXIT_OK
    if action == "character":
        w = _word_payload(payload, cfg)
        return {"character": cfg.field.to_str(scaling_character(w))}, EXIT_OK
    if action == "apply":
        if not isinstance(payload, dict) or "word" not in payload:
            raise InputError("apply expects {\"word\": [...], \"curve\": {...}} or {\"word\": [...], \"point\": [...]}")
        w = _word_payload(payload, cfg)
        if "curve" in payload:
            j = _curve_payload(payload["curve"], cfg)
            if j.field != w.field:
                w = word_from_json(payload["word"], j.field)
            return apply_word_curve(w, j).to_json(), EXIT_OK
        if "point" in payload:
            P = apply_word_point(w, [str(v) for v in payload["point"]])
            return {"point": P.to_json()}, EXIT_OK
        raise InputError("apply needs a 'curve' or a 'point'")
    raise InputError(f"unknown word action {action!r}")


def _weights(payload, key="weights"):
    arr = payload[key] if isinstance(payload, dict) else payload
    return chains.as_chain(arr)


def cmd_chain(action, payload, cfg: Config):
    if action == "standardize":
        m = int(payload.get("m", 0)) if isinstance(payload, dict) else 0
        cap = cfg.caps[0] if cfg.caps else None
        try:
            sf = chains.to_standard_form(_weights(payload), m, cap)
        except chains.CapExhausted as e:
            return {"error": "cap_exhausted", "detail": str(e)}, EXIT_UNDECIDED
        except (chains.NegativeDefiniteChain, chains.HodgeIndexError) as e:
            return {"error": type(e).__name__, "detail": str(e)}, EXIT_FALSE
        return sf.to_json(), EXIT_OK
    if action == "invariant":
        cap = cfg.caps[0] if cfg.caps else None
        try:
            inv = chains.dg_invariant(_weights(payload), cap)
        except chains.CapExhausted as e:
            return {"error": "cap_exhausted", "detail": str(e)}, EXIT_UNDECIDED
        except chains.HodgeIndexError as e:
            return {"error": "HodgeIndexError", "detail": str(e)}, EXIT_FALSE
        return {"invariant": inv if isinstance(inv, str) else list(inv)}, EXIT_OK
    if action == "reach":
        comps, depth = cfg.caps or (10, 14)
        res = chains.reachable(_weights(payload, "from"), _weights(payload, "to"), comps, depth)
        return res.to_json(), EXIT_OK if res.found else EXIT_FALSE
    raise InputError(f"unknown chain action {action!r}")


def cmd_exotic(p: int, cfg: Config):
    try:
        j = exotic_line(p)
    except ValueError as e:
        raise InputError(str(e)) from e
    return j.to_json(), EXIT_OK


def cmd_conic(action, payload, cfg: Config):
    if action != "normalize":
        raise InputError(f"unknown conic action {action!r}")
    f = field_of(payload["field"]) if "field" in payload else cfg.field
    C = Conic.of(f, [str(v) for v in payload["conic"]])
    P = ProjPoint.of(f, [str(v) for v in payload["point"]])
    M = normalize_conic(C, P)
    return {"matrix": [[f.to_str(v) for v in row] for row in M], "check": check_normalization(C, P, M)}, EXIT_OK


def cmd_sample(count: int, base: str, cfg: Config):
    """Seeded words (and their images of L0 or L1) for scripted round trips."""
    rng = random.Random(cfg.seed)
    sampler = WordSampler(field=cfg.field)
    out = []
    for _ in range(count):
        w = random_word(rng, sampler)
        item = {"word": w.to_json()}
        if base in ("L0", "L1"):
            j = line_L0(cfg.field) if base == "L0" else line_L1(cfg.field)
            item["curve"] = apply_word_curve(w, j).to_json()
        out.append(item)
    return out, EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="conic-complement", description="Automorphisms and lines of the conic complement.")
    ap.add_argument("--field", default="Q", help="Q, F3, F5, ... (default Q)")
    ap.add_argument("--budget", type=int, default=500, help="letter budget for rectify")
    ap.add_argument("--caps", default=None, help="COMPONENTS,DEPTH for chain searches")
    ap.add_argument("--seed", type=int, default=0, help="seed for the sample command")
    ap.add_argument("--output", default=None, help="write JSON here instead of stdout")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="embedding report for a curve")
    p.add_argument("payload")
    p = sub.add_parser("rectify", help="rectify a curve to L0 or L1")
    p.add_argument("payload")
    p = sub.add_parser("word", help="word operations")
    p.add_argument("action", choices=["normalize", "invert", "apply", "character"])
    p.add_argument("payload")
    p = sub.add_parser("chain", help="chain calculus")
    p.add_argument("action", choices=["standardize", "invariant", "reach"])
    p.add_argument("payload")
    p = sub.add_parser("exotic", help="the characteristic-p exotic line")
    p.add_argument("p", type=int)
    p = sub.add_parser("conic", help="conic normalization")
    p.add_argument("action", choices=["normalize"])
    p.add_argument("payload")
    p = sub.add_parser("sample", help="seeded random words")
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--base", choices=["none", "L0", "L1"], default="none")
    return ap


def run(argv=None):
    """Parse, dispatch, and return (result, exit code, Config or None)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except InputError as e:
        return {"error": "UsageError", "detail": str(e)}, EXIT_INPUT, None
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        cfg = Config(field_of(args.field), args.budget, _parse_caps(args.caps), args.seed, args.output)
        cmd = args.command
        if cmd == "exotic":
            return (*cmd_exotic(args.p, cfg), cfg)
        if cmd == "sample":
            return (*cmd_sample(args.count, args.base, cfg), cfg)
        payload = load_payload(args.payload)
        if cmd == "verify":
            res = cmd_verify(payload, cfg)
        elif cmd == "rectify":
            res = cmd_rectify(payload, cfg)
        elif cmd == "word":
            res = cmd_word(args.action, payload, cfg)
        elif cmd == "chain":
            res = cmd_chain(args.action, payload, cfg)
        else:
            res = cmd_conic(args.action, payload, cfg)
        return (*res, cfg)
    except (InputError, FieldError, PolyError, GroupError, chains.ChainError, KeyError, TypeError, ValueError) as e:
        return {"error": type(e).__name__, "detail": str(e)}, EXIT_INPUT, None


def main(argv=None) -> int:
    result, code, cfg = run(argv)
    text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if cfg is not None and cfg.output:
        Path(cfg.output).write_text(text)
    elif code == EXIT_INPUT:
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
