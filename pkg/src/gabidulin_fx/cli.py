"""Command-line interface.

Subcommands: ``build``, ``encode``, ``decode``, ``weight``, ``simulate`` and
``reproduce``.  Exit codes: 0 success, 1 reproduction mismatch, 2 usage,
3 invalid config or input, 4 decoding failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .code import (
    decode,
    encode,
    expand_matrix,
    random_error,
    random_message,
    rank_weight,
)
from .config import FIXTURES, CodeConfig, fixture_dir
from .errors import DecodingFailure, FieldMismatchError, ParseError, ValidationError
from .skew import min_ideal_generator

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INVALID, EXIT_DECODE = 0, 1, 2, 3, 4


class _Invalid(Exception):
    """Bad user input detected by the CLI itself (exit 3)."""


# -- serialization ------------------------------------------------------------------

def dumps(obj):
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def vector_json(v):
    return [str(a) for a in v]


def matrix_json(rows):
    rows = [[str(a) for a in r] for r in rows]
    return {"rows": len(rows), "cols": len(rows[0]) if rows else 0, "entries": rows}


def text_grid(rows):
    cells = [[str(a) for a in r] for r in rows]
    if not cells:
        return ""
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
                     for r in cells) + "\n"


def _read_vector(ext, path, keys):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise _Invalid(f"{path}: not valid JSON ({exc})") from None
    if isinstance(data, dict):
        key = next((k for k in keys if k in data), None)
        if key is None:
            raise _Invalid(f"{path}: expected one of the keys {', '.join(keys)}")
        data = data[key]
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        raise _Invalid(f"{path}: expected a list of element strings")
    return [ext.parse(s) for s in data]


def _load_code(path):
    return CodeConfig.load(path).build()


# -- subcommands --------------------------------------------------------------------

def cmd_build(args, out):
    code = _load_code(args.config)
    ext = code.ext
    out.write(code.summary() + "\n")
    out.write(f"L = K[y]/({ext.minimal_polynomial_str()})\n")
    out.write("G =\n")
    out.write(text_grid(code.G))
    return EXIT_OK


def cmd_encode(args, out):
    code = _load_code(args.config)
    ext = code.ext
    if args.random is not None:
        message = random_message(code, random.Random(args.random), args.deg_bound,
                                 args.polynomial)
    elif args.message is not None:
        message = _read_vector(ext, args.message, ("message",))
    else:
        raise _Invalid("give a MESSAGE file or --random SEED")
    if len(message) != code.k:
        raise _Invalid(f"message has {len(message)} entries, expected k = {code.k}")
    c = encode(code, message)
    M = expand_matrix(c)
    result = {"message": vector_json(message), "codeword": vector_json(c),
              "matrix": M.to_json()}
    if args.error_rank is not None:
        e = random_error(ext, code.n, args.error_rank, args.deg_bound, seed=args.error_seed)
        result["error"] = vector_json(e)
        result["received"] = vector_json([a + b for a, b in zip(c, e)])
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "codeword.json").write_text(dumps(result["codeword"]), encoding="utf-8")
        (d / "matrix.json").write_text(M.dumps(), encoding="utf-8")
        (d / "matrix.txt").write_text(M.to_text(), encoding="utf-8")
        if "received" in result:
            (d / "received.json").write_text(dumps(result["received"]), encoding="utf-8")
    out.write(dumps(result))
    return EXIT_OK


def cmd_decode(args, out):
    code = _load_code(args.config)
    y = _read_vector(code.ext, args.received, ("received", "codeword"))
    if len(y) != code.n:
        raise _Invalid(f"received word has {len(y)} entries, expected n = {code.n}")
    try:
        res = decode(code, y)
    except DecodingFailure as exc:
        report = {"success": False, "reason": exc.reason}
        if exc.detail:
            report["detail"] = exc.detail
        out.write(dumps(report))
        return EXIT_DECODE
    report = {"success": True, "message": vector_json(res.message),
              "error_rank": res.error_rank}
    if args.verbose:
        report["error"] = vector_json(res.error)
        report["W"] = str(res.W)
        report["N"] = str(res.N)
        report["f"] = str(res.info_poly)
    out.write(dumps(report))
    return EXIT_OK


def cmd_weight(args, out):
    code = _load_code(args.config)
    v = _read_vector(code.ext, args.vector, ("vector", "codeword", "received"))
    w = rank_weight(v)
    if not args.verbose:
        out.write(f"{w}\n")
        return EXIT_OK
    P = min_ideal_generator(v)
    deg = 0 if P.is_zero() or P.degree < 0 else P.degree
    out.write(f"rank of coordinate matrix: {w}\n")
    out.write(f"θ-degree of minimal vanishing polynomial: {deg}\n")
    out.write(f"minimal vanishing polynomial: {P}\n")
    out.write(f"weight: {w}\n")
    if deg != w:  # pragma: no cover
        raise AssertionError("the two weight computations disagree")
    return EXIT_OK


_WORKER = {}


def _worker_init(cfg_dict):
    _WORKER["code"] = CodeConfig.from_dict(cfg_dict).build()


def _trial(job):
    """One encode, corrupt, decode round; returns (trial, rank, success, ms)."""
    trial, seed, t, deg_bound = job
    code = _WORKER["code"]
    rng = random.Random(f"{seed}-{trial}")
    message = random_message(code, rng, deg_bound)
    c = encode(code, message)
    e = random_error(code.ext, code.n, t, deg_bound, seed=rng)
    y = [a + b for a, b in zip(c, e)]
    start = time.perf_counter()
    try:
        res = decode(code, y)
        ok = res.message == message
    except DecodingFailure:
        ok = False
    ms = (time.perf_counter() - start) * 1000.0
    return trial, rank_weight(e), ok, ms


def run_simulation(cfg, trials, t, seed, deg_bound=2, jobs=1):
    """List of ``(trial, error_rank, success, decode_ms)`` in trial order."""
    specs = [(i, seed, t, deg_bound) for i in range(trials)]
    if jobs <= 1:
        _worker_init(cfg.to_dict())
        return [_trial(s) for s in specs]
    with ProcessPoolExecutor(jobs, initializer=_worker_init,
                             initargs=(cfg.to_dict(),)) as pool:
        rows = list(pool.map(_trial, specs, chunksize=max(1, trials // (4 * jobs))))
    return sorted(rows)


def cmd_simulate(args, out):
    cfg = CodeConfig.load(args.config)
    code = cfg.build()
    if args.error_rank < 0 or args.error_rank > code.n:
        raise _Invalid(f"error rank must lie in 0..{code.n}")
    if args.trials < 0:
        raise _Invalid("trials must be non-negative")
    rows = run_simulation(cfg, args.trials, args.error_rank, args.seed, args.deg_bound,
                          args.jobs)
    out.write("trial,error_rank_actual,success,decode_ms\n")
    for trial, w, ok, ms in rows:
        timing = "" if args.no_timing else f"{ms:.3f}"
        out.write(f"{trial},{w},{int(ok)},{timing}\n")
    succ = sum(ok for _, _, ok, _ in rows)
    rate = succ / len(rows) if rows else 1.0
    out.write(f"# {code.summary()} error_rank={args.error_rank} seed={args.seed} "
              f"deg_bound={args.deg_bound} trials={len(rows)} successes={succ} "
              f"success_rate={rate:.4f}\n")
    return EXIT_OK


def regenerate_fixture(name):
    """Canonical text of every artifact of a bundled worked example.

    Returns ``{filename: text}``; the message is read from the fixture and
    everything else is recomputed.
    """
    d = fixture_dir(name)
    cfg = CodeConfig.load(d / "config.toml")
    code = cfg.build()
    message = _read_vector(code.ext, d / "message.json", ("message",))
    c = encode(code, message, verify=True)
    files = {
        "generator.json": dumps(matrix_json(code.G)),
        "codeword.json": dumps(vector_json(c)),
        "matrix.json": expand_matrix(c).dumps(),
    }
    if (d / "conjugates.json").exists():
        conj = [[gj.theta(i) for gj in code.g] for i in range(code.ext.n)]
        files["conjugates.json"] = dumps(matrix_json(conj))
    return files


def cmd_reproduce(args, out):
    d = fixture_dir(args.fixture)
    ok = True
    for fname, text in regenerate_fixture(args.fixture).items():
        golden = (d / fname).read_bytes()
        same = text.encode("utf-8") == golden
        ok &= same
        out.write(f"{'PASS' if same else 'FAIL'}  {args.fixture}/{fname}\n")
    out.write(("reproduced" if ok else "MISMATCH") + f": {args.fixture}\n")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- argument parsing ---------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="gabidulin-fx",
        description="Rank-metric Gabidulin codes over cyclic extensions of F_q(x).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a code and print its parameters and G")
    p.add_argument("config")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("encode", help="encode a message; emit codeword and matrix")
    p.add_argument("config")
    p.add_argument("message", nargs="?", help="JSON list of k elements")
    p.add_argument("--random", type=int, metavar="SEED", help="encode a random message")
    p.add_argument("--deg-bound", type=int, default=2)
    p.add_argument("--polynomial", action="store_true",
                   help="random message with polynomial coordinates")
    p.add_argument("--error-rank", type=int, help="also add a random error of this rank")
    p.add_argument("--error-seed", type=int, default=0)
    p.add_argument("--out-dir", help="also write codeword/matrix files here")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a received word")
    p.add_argument("config")
    p.add_argument("received", help="JSON list of n elements")
    p.add_argument("-v", "--verbose", action="store_true", help="show W, N and f")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("weight", help="rank weight of a vector")
    p.add_argument("config")
    p.add_argument("vector", help="JSON list of elements")
    p.add_argument("-v", "--verbose", action="store_true",
                   help="show both weight computations")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("simulate", help="seeded encode/corrupt/decode trials as CSV")
    p.add_argument("config")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--error-rank", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deg-bound", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true",
                   help="leave decode_ms empty so output is byte-reproducible")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reproduce", help="recompute a bundled worked example")
    p.add_argument("--fixture", required=True, choices=FIXTURES)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ValidationError, ParseError, FieldMismatchError, _Invalid) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
