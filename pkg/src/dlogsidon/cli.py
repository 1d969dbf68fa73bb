"""Command-line surface tying the modules together.

Subcommands: basis, generate, prune, bh generate, bh montecarlo, audit,
count, finite, gf2 finite, gf2 generate. Every output is canonical JSON
(sorted keys, compact separators), one value per line, so identical
configurations produce byte-identical artifacts. Big integers are written
as decimal strings; the only floats are labeled approximations.

Exit status: 0 on success, 1 on a verification or runtime failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields

from . import bh as bh_mod
from . import gf2x
from ._precision import DEFAULT_PRECISION, MIN_PRECISION, PRECISION_ENV, default_precision
from .arith import is_prime, smallest_primitive_root
from .auditor import find_collisions, find_collisions_bruteforce, growth_bracket_check
from .basis import Basis, build_basis
from .blocks import Constant, const_decimal, const_sqrt2, const_sqrt5, const_window, sidon_params
from .errors import DlogSidonError
from .generator import count_upto, finite_dlog_sidon_set, generate_blocks
from .pruner import pruned_generate


class UsageError(Exception):
    """A bad flag value; reported through argparse with exit status 2."""


@dataclass
class RunConfig:
    """Normalized flags shared across subcommands; the rest ride in extras."""

    command: str
    c: str = "sqrt5"
    basis_mode: str = "deterministic"
    seed: int | None = None
    k_max: int | None = None
    h: int = 2
    precision: int | None = None
    out: str = "-"
    summary: str | None = None
    extras: dict = field(default_factory=dict)


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    command = ns.command
    if getattr(ns, "sub", None):
        command += " " + ns.sub
    shared = {f.name for f in fields(RunConfig)} - {"command", "extras"}
    defaults = RunConfig(command="")
    data = {name: getattr(ns, name, getattr(defaults, name)) for name in shared}
    extras = {k: v for k, v in vars(ns).items()
              if k not in shared and k not in ("command", "sub")}
    cfg = RunConfig(command=command, extras=extras, **data)
    if cfg.precision is not None and cfg.precision < MIN_PRECISION:
        raise UsageError(f"--precision must be >= {MIN_PRECISION} bits")
    return cfg


def parse_constant(text: str) -> Constant:
    """sqrt5 | sqrt2 | bh:<h> | decimal string in (0, 1/2)."""
    try:
        if text == "sqrt5":
            const = const_sqrt5()
        elif text == "sqrt2":
            const = const_sqrt2()
        elif text.startswith("bh:"):
            const = const_window(int(text.split(":", 1)[1]))
        else:
            const = const_decimal(text)
        const.eval(MIN_PRECISION)
    except (ValueError, DlogSidonError) as e:
        raise UsageError(f"--c {text!r}: {e}") from None
    return const


def _canon(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_lines(path: str | None, objs) -> None:
    _write_text(path, "".join(_canon(o) + "\n" for o in objs))


def _write_doc(path: str | None, obj) -> None:
    _write_text(path, _canon(obj) + "\n")


def _read_lines(path: str) -> list[str]:
    if path == "-":
        return sys.stdin.read().splitlines()
    with open(path) as fh:
        return fh.read().splitlines()


def _sidon_in_cyclic(residues, modulus: int) -> bool:
    """Exhaustive check: sums a + b (a <= b) pairwise distinct mod modulus."""
    rs = sorted(residues)
    seen = set()
    for i, a in enumerate(rs):
        for b in rs[i:]:
            s = (a + b) % modulus
            if s in seen:
                return False
            seen.add(s)
    return True


def _make_basis(cfg: RunConfig, scale: int, count: int) -> Basis:
    path = cfg.extras.get("basis_file")
    if path:
        with open(path) as fh:
            b = Basis.from_json_doc(json.load(fh))
        if b.scale != scale:
            raise UsageError(f"--basis-file scale {b.scale} does not match h^2 = {scale}")
        return b
    if cfg.basis_mode == "random" and cfg.seed is None:
        raise UsageError("--basis random needs --seed")
    return build_basis(cfg.basis_mode, scale, count, seed=cfg.seed)


def _sidon_block_params(cfg: RunConfig):
    prec = cfg.precision or default_precision()
    return sidon_params(c=parse_constant(cfg.c), precision=prec,
                        offset=cfg.extras.get("offset", -3),
                        k_min=cfg.extras.get("kmin", 2))


def _cmd_basis(cfg: RunConfig) -> int:
    scale = cfg.extras["scale"]
    b = _make_basis(cfg, scale, cfg.extras["count"])
    _write_doc(cfg.out, b.to_json_doc())
    return 0


def _cmd_generate(cfg: RunConfig) -> int:
    params = _sidon_block_params(cfg)
    basis = _make_basis(cfg, cfg.h * cfg.h, cfg.k_max)
    prefix = generate_blocks(cfg.k_max, params, basis, h=cfg.h)
    _write_lines(cfg.out, (e.to_json_obj() for e in prefix.elements))
    _write_doc(cfg.summary, {
        "c": cfg.c,
        "h": cfg.h,
        "k_max": cfg.k_max,
        "blocks": prefix.summaries(),
        "excluded": [r.to_json_obj() for r in prefix.excluded],
    })
    return 0


def _cmd_prune(cfg: RunConfig) -> int:
    params = _sidon_block_params(cfg)
    basis = _make_basis(cfg, 4, cfg.k_max)
    result = pruned_generate(cfg.k_max, params, basis, slack=cfg.extras["slack"])
    _write_lines(cfg.out, (e.to_json_obj() for e in result.pruned.elements))
    if cfg.extras.get("bad_out"):
        _write_lines(cfg.extras["bad_out"], (r.to_json_obj() for r in result.records))
    _write_doc(cfg.summary, {
        "c": cfg.c,
        "k_max": cfg.k_max,
        "blocks": result.reports,
        "bad_total": len(result.records),
        "kept": len(result.pruned.elements),
    })
    return 0


def _cmd_bh_generate(cfg: RunConfig) -> int:
    params = bh_mod.bh_params(cfg.h, precision=cfg.precision)
    basis = _make_basis(cfg, params.scale, cfg.k_max)
    prefix = bh_mod.bh_generate(cfg.k_max, params, basis)
    if cfg.extras["raw"]:
        kept, removed = prefix.elements, []
    else:
        result = bh_mod.bh_prune(prefix)
        kept, removed = result.pruned.elements, result.removed
    _write_lines(cfg.out, (e.to_json_obj() for e in kept))
    _write_doc(cfg.summary, {
        "h": cfg.h,
        "k_max": cfg.k_max,
        "blocks": prefix.summaries(),
        "removed": [e.to_json_obj() for e in removed],
        "negative_taper_blocks": bh_mod.negative_taper_blocks(params.block, cfg.k_max),
    })
    return 0


def _cmd_bh_montecarlo(cfg: RunConfig) -> int:
    doc = bh_mod.montecarlo_bad_ratio(cfg.h, cfg.k_max, cfg.extras["trials"],
                                      cfg.seed, precision=cfg.precision)
    _write_doc(cfg.out, doc)
    return 0


def _cmd_audit(cfg: RunConfig) -> int:
    l = cfg.extras["l"]
    if l < 2:
        raise UsageError("--l must be >= 2")
    values = []
    for line in _read_lines(cfg.extras["input"]):
        if not line.strip():
            continue
        obj = json.loads(line)
        values.append(int(obj["a"]) if isinstance(obj, dict) else int(obj))
    method = cfg.extras["method"]
    if method == "brute":
        reports = find_collisions_bruteforce(values, l, modulus=cfg.extras.get("modulus"))
    else:
        reports = find_collisions(values, l, modulus=cfg.extras.get("modulus"),
                                  method=method)
    _write_lines(cfg.out, (r.to_json_obj() for r in reports))
    if reports and not cfg.extras["allow_collisions"]:
        where = "stdout" if cfg.out == "-" else cfg.out
        print(f"audit: {len(reports)} collision report(s) at {where}", file=sys.stderr)
        return 1
    return 0


def _cmd_count(cfg: RunConfig) -> int:
    params = _sidon_block_params(cfg)
    basis = _make_basis(cfg, cfg.h * cfg.h, cfg.k_max)
    prefix = generate_blocks(cfg.k_max, params, basis, h=cfg.h)
    x = cfg.extras["x"]
    doc = {"x": str(x), "count": count_upto(x, prefix), "k_max": cfg.k_max}
    if cfg.extras["brackets"]:
        doc["brackets"] = growth_bracket_check(prefix)
    _write_doc(cfg.out, doc)
    return 0


def _cmd_finite(cfg: RunConfig) -> int:
    q = cfg.extras["q"]
    if not is_prime(q):
        raise UsageError(f"--q {q} is not prime")
    g = cfg.extras.get("g") or smallest_primitive_root(q)
    residues = sorted(finite_dlog_sidon_set(q, g))
    sidon = _sidon_in_cyclic(residues, q - 1)
    _write_doc(cfg.out, {"q": q, "g": g, "modulus": q - 1, "size": len(residues),
                         "residues": residues, "sidon": sidon})
    return 0 if sidon else 1


def _cmd_gf2_finite(cfg: RunConfig) -> int:
    n = cfg.extras["n"]
    if n < 3:
        raise UsageError("--n must be >= 3")
    q = int(cfg.extras["q"], 16) if cfg.extras.get("q") else None
    residues = sorted(gf2x.gf2_finite_sidon(n, q))
    if q is None:
        q = gf2x.irreducibles_of_degree(n)[0]
    modulus = (1 << n) - 1
    sidon = _sidon_in_cyclic(residues, modulus)
    _write_doc(cfg.out, {"n": n, "q": format(q, "x"), "modulus": modulus,
                         "size": len(residues), "residues": residues, "sidon": sidon})
    return 0 if sidon else 1


def _cmd_gf2_generate(cfg: RunConfig) -> int:
    prec = cfg.precision or default_precision()
    params = sidon_params(c=parse_constant(cfg.c), precision=prec, offset=0)
    prefix = gf2x.gf2_generate_blocks(cfg.k_max, params)
    _write_lines(cfg.out, (e.to_json_obj() for e in prefix.elements))
    _write_doc(cfg.summary, {
        "c": cfg.c,
        "k_max": cfg.k_max,
        "blocks": [{"k": k, "block_size": prefix.block_sizes[k]}
                   for k in sorted(prefix.block_sizes)],
        "excluded": [{"p": format(r.p, "x"), "k": r.k, "basis_index": r.basis_index}
                     for r in prefix.excluded],
    })
    return 0


_HANDLERS = {
    "basis": _cmd_basis,
    "generate": _cmd_generate,
    "prune": _cmd_prune,
    "bh generate": _cmd_bh_generate,
    "bh montecarlo": _cmd_bh_montecarlo,
    "audit": _cmd_audit,
    "count": _cmd_count,
    "finite": _cmd_finite,
    "gf2 finite": _cmd_gf2_finite,
    "gf2 generate": _cmd_gf2_generate,
}


def run(config: RunConfig) -> int:
    return _HANDLERS[config.command](config)


def _add_c_flag(p, default):
    p.add_argument("--c", default=default,
                   help="exponent constant: sqrt5, sqrt2, bh:<h>, or a decimal in (0, 1/2)")


def _add_law_flags(p):
    p.add_argument("--kmax", dest="k_max", type=int, required=True,
                   help="last block index to generate")
    p.add_argument("--offset", type=int, default=-3, help="exponent offset (default -3)")
    p.add_argument("--kmin", type=int, default=2, help="first block index (default 2)")


def _add_basis_flags(p):
    p.add_argument("--basis", dest="basis_mode", default="deterministic",
                   choices=("deterministic", "random"),
                   help="least prime per interval, or seeded uniform choice")
    p.add_argument("--basis-file", dest="basis_file",
                   help="JSON basis document to use instead of building one")
    p.add_argument("--seed", type=int, help="RNG seed (required with --basis random)")


def _add_out_flags(p, summary=True):
    p.add_argument("--precision", type=int,
                   help=f"working precision bits, >= {MIN_PRECISION} "
                        f"(default ${PRECISION_ENV} or {DEFAULT_PRECISION})")
    p.add_argument("--out", default="-", help="output path, - for stdout (default)")
    if summary:
        p.add_argument("--summary", help="summary JSON path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlogsidon",
        description="Sidon and B_h sequences from discrete logarithms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="emit a basis document as JSON")
    p.add_argument("--scale", type=int, default=4, help="radix scale h^2 (default 4)")
    p.add_argument("--count", type=int, required=True, help="number of entries")
    _add_basis_flags(p)
    _add_out_flags(p, summary=False)

    p = sub.add_parser("generate", help="generate all elements of blocks up to kmax")
    _add_c_flag(p, "sqrt5")
    _add_law_flags(p)
    p.add_argument("--h", type=int, default=2, help="digit window order (default 2)")
    _add_basis_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("prune", help="generate and remove range-bound bad primes")
    _add_c_flag(p, "sqrt2")
    _add_law_flags(p)
    p.add_argument("--slack", type=float, default=0.1,
                   help="allowed removed fraction above 1/2 (default 0.1)")
    p.add_argument("--bad-out", dest="bad_out", help="bad-prime records JSONL path")
    _add_basis_flags(p)
    _add_out_flags(p)

    bhp = sub.add_parser("bh", help="h-fold-sum sequences, h >= 3")
    bhsub = bhp.add_subparsers(dest="sub", required=True)

    p = bhsub.add_parser("generate", help="tapered-block generation plus greedy pruning")
    p.add_argument("--h", type=int, default=3, help="sum order (default 3)")
    p.add_argument("--kmax", dest="k_max", type=int, required=True)
    p.add_argument("--raw", action="store_true", help="skip the repeated-sum pruning")
    _add_basis_flags(p)
    _add_out_flags(p)

    p = bhsub.add_parser("montecarlo", help="removed-fraction survey over random bases")
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--kmax", dest="k_max", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_out_flags(p, summary=False)

    p = sub.add_parser("audit", help="exhaustive l-fold sum collision search")
    p.add_argument("--input", required=True, help="element JSONL path, - for stdin")
    p.add_argument("--l", type=int, default=2, help="sum arity (default 2)")
    p.add_argument("--modulus", type=int, help="compare sums modulo this")
    p.add_argument("--method", default="auto",
                   choices=("auto", "halves", "filtered", "brute"))
    p.add_argument("--allow-collisions", dest="allow_collisions", action="store_true",
                   help="exit 0 even when collisions are found")
    p.add_argument("--out", default="-", help="collision report JSONL path")

    p = sub.add_parser("count", help="counting function A(x) against a prefix")
    p.add_argument("--x", type=int, required=True, help="count elements <= x")
    _add_c_flag(p, "sqrt5")
    _add_law_flags(p)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--brackets", action="store_true",
                   help="include per-block bracket checks and exponent diagnostics")
    _add_basis_flags(p)
    _add_out_flags(p, summary=False)

    p = sub.add_parser("finite", help="finite discrete-log Sidon set mod a prime")
    p.add_argument("--q", type=int, required=True, help="prime modulus")
    p.add_argument("--g", type=int, help="primitive root (default: smallest)")
    p.add_argument("--out", default="-")

    gf2p = sub.add_parser("gf2", help="the GF(2)[X] analogue")
    gf2sub = gf2p.add_subparsers(dest="sub", required=True)

    p = gf2sub.add_parser("finite", help="finite Sidon set in Z_(2^n - 1)")
    p.add_argument("--n", type=int, required=True, help="modulus degree, >= 3")
    p.add_argument("--q", help="irreducible modulus as hex bits (default: least)")
    p.add_argument("--out", default="-")

    p = gf2sub.add_parser("generate", help="blocks of irreducibles by degree")
    _add_c_flag(p, "sqrt5")
    p.add_argument("--kmax", dest="k_max", type=int, required=True)
    _add_out_flags(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except UsageError as e:
        parser.error(str(e))
    except (DlogSidonError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
