"""
Command-line interface.

    randsvd svd         factor a matrix file
    randsvd image       rank-k reconstructions of a PGM image
    randsvd bounds      computed vs. estimated range-finder errors
    randsvd angles      canonical angles and their bounds
    randsvd gen-testmat write a controlled-gap test matrix

Exit codes: 0 ok, 2 usage / bad parameters, 3 I/O or file format,
4 numerical failure.
"""
import argparse
import logging
import shlex
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from . import fileio
from .core import spectral_norm, svd_small
from .errors import NUMERICAL_ERRORS, DimensionError, FormatError, ParameterError
from .testmats import GapSpec, controlled_gap, gap_matrix, oracle_svd

log = logging.getLogger("randsvd")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4
DATA_DIR = Path(__file__).parent / "data"
BUNDLED_IMAGE = DATA_DIR / "test_image.pgm"


def int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(parser, alg_choices, alg_default=None):
    parser.add_argument("--in", dest="input", type=Path, help="input matrix file")
    parser.add_argument("--out-dir", type=Path, default=Path("."), help="output directory")
    parser.add_argument("--alg", choices=alg_choices, default=alg_default, required=alg_default is None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=fileio.FORMATS, help="input format (default: from extension)")


def _gap_flags(parser, gap_default, seed_flag="--matrix-seed"):
    parser.add_argument("--m", type=int, default=3000)
    parser.add_argument("--n", type=int, default=300)
    parser.add_argument("--r", type=int, default=15)
    parser.add_argument("--gap", type=float, default=gap_default)
    parser.add_argument("--density", type=float, default=0.025)
    parser.add_argument(seed_flag, dest="matrix_seed", type=int, default=0, help="seed of the test matrix")


def build_parser():
    parser = argparse.ArgumentParser(prog="randsvd", description="Randomized SVD experiments.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("svd", help="factor a matrix")
    _common(p, ex.ALGORITHMS)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--q", type=int, default=0)

    p = sub.add_parser("image", help="low-rank reconstructions of a grayscale image")
    _common(p, ex.ALGORITHMS, "basic")
    p.add_argument("--k", type=int_list, default=[10, 50, 100, 400, 800], help="comma-separated ranks")
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--no-spectral", action="store_true", help="skip the spectral-norm error column")

    p = sub.add_parser("bounds", help="computed vs. estimated range-finder error")
    _common(p, ("basic", "power", "ortho"), "basic")
    _gap_flags(p, 10.0)
    p.add_argument("--sweep", choices=("none", "k", "p", "q"), default="none")
    p.add_argument("--values", type=int_list, help="sweep values (defaults follow the sweep variable)")
    p.add_argument("--k", type=int, default=20)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--trials", type=int, help="trials per point (default 20, or 100 without a sweep)")
    p.add_argument("--flat-tail", action="store_true", help="flat-tail form of the orthonormalized bound")

    p = sub.add_parser("angles", help="canonical angles and their bounds")
    _common(p, ("basic", "power", "ortho"), "power")
    _gap_flags(p, 2.0)
    p.add_argument("--k", type=int, default=25)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--q", type=int_list, default=[0, 1, 2], help="comma-separated power steps")
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("gen-testmat", help="write a controlled-gap test matrix")
    _gap_flags(p, 10.0, seed_flag="--seed")
    p.add_argument("--out-dir", type=Path, default=Path("."))
    p.add_argument("--out", type=Path, help="output file (default OUT_DIR/testmat.mtx)")
    p.add_argument("--format", choices=("mm", "csv"), default="mm")
    return parser


def _params(args, drop=("command", "verbose", "func")):
    out = {}
    for key, val in vars(args).items():
        if key in drop or val is None:
            continue
        if isinstance(val, list):
            val = ",".join(str(v) for v in val)
        out[key] = val
    return out


def _gap_spec(args):
    return GapSpec(args.m, args.n, args.r, args.gap, args.density, args.matrix_seed)


def _load_or_generate(args):
    """Input matrix plus its oracle SVD (cached for generated matrices)."""
    if args.input is not None:
        A = fileio.read_matrix(args.input, args.format)
        return A, svd_small(A)
    spec = _gap_spec(args)
    return gap_matrix(spec), oracle_svd(spec)


def cmd_svd(args):
    A = fileio.read_matrix(_require_input(args), args.format)
    m, n = A.shape
    p = args.p
    if args.k + p > min(m, n):
        p = max(0, min(m, n) - args.k)
        log.warning("k + p exceeds min(m, n) = %d; using p = %d", min(m, n), p)
    f = ex.factorize(A, args.alg, args.k, p, args.q, args.seed)
    approx = f.reconstruct()
    norm2 = spectral_norm(A)
    rel_spec = spectral_norm(A - approx) / norm2 if norm2 else 0.0
    rel_fro = np.linalg.norm(A - approx) / np.linalg.norm(A) if A.any() else 0.0
    params = _params(args)
    params["p_effective"] = p
    manifest = ex.RunManifest("svd", params, [args.seed])
    header = manifest.lines() + [
        f"rank: {f.rank}",
        f"rel_spectral_error: {fileio.fmt(rel_spec)}",
        f"rel_frobenius_error: {fileio.fmt(rel_fro)}",
    ]
    out = args.out_dir
    fileio.write_csv(f.U, out / "U.csv", header)
    if args.alg == "sp-hermitian":
        fileio.write_csv(f.lam, out / "lambda.csv", header)
    else:
        fileio.write_csv(f.sigma, out / "sigma.csv", header)
        fileio.write_csv(f.V, out / "V.csv", header)
    log.info("rank %d factorization, relative spectral error %.3e", f.rank, rel_spec)
    return EXIT_OK


def _require_input(args):
    if args.input is None:
        raise ParameterError("--in is required for this command")
    return args.input


def _write_rows(path, manifest, columns, rows):
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(fileio.fmt(v) if isinstance(v, (float, np.floating)) else str(v)
                              for v in row))
    text = "".join(f"# {line}\n" for line in manifest.lines()) + "\n".join(lines) + "\n"
    with fileio.atomic_write(path) as fh:
        fh.write(text)


def cmd_image(args):
    path = args.input or BUNDLED_IMAGE
    image = fileio.read_matrix(path, args.format or "pgm")
    seeds = [args.seed + t for t in range(args.trials)]
    rows, recon = ex.image_sweep(image, args.alg, args.k, args.p, args.q, seeds,
                                 spectral=not args.no_spectral)
    params = _params(args)
    params["input"] = str(path)
    manifest = ex.RunManifest("image", params, seeds)
    for k, approx in recon.items():
        fileio.write_pgm(approx, args.out_dir / f"recon_k{k}.pgm")
    _write_rows(args.out_dir / "errors.csv", manifest, ex.IMAGE_COLUMNS, rows)
    return EXIT_OK


DEFAULT_SWEEPS = {"k": [5, 10, 15, 20, 25, 30], "p": [5, 10, 15, 20, 25], "q": [0, 1, 2]}


def cmd_bounds(args):
    A, oracle = _load_or_generate(args)
    trials = args.trials or (100 if args.sweep == "none" else 20)
    if args.sweep == "none":
        points = [(args.k, args.p, args.q)]
    else:
        values = args.values or DEFAULT_SWEEPS[args.sweep]
        base = {"k": args.k, "p": args.p, "q": args.q}
        points = [tuple({**base, args.sweep: v}[key] for key in ("k", "p", "q")) for v in values]
    reports = ex.bounds_sweep(A, oracle.sigma, args.alg, points, trials, args.seed, args.flat_tail)
    params = _params(args)
    params["trials"] = trials
    manifest = ex.RunManifest("bounds", params, [args.seed + t for t in range(trials)])
    _write_rows(args.out_dir / "bounds.csv", manifest, ex.BOUNDS_COLUMNS, ex.bound_rows(reports))
    return EXIT_OK


def cmd_angles(args):
    A, oracle = _load_or_generate(args)
    seeds = [args.seed + t for t in range(args.trials)]
    rows = ex.angles_sweep(A, args.alg, args.k, args.p, args.q, seeds, oracle)
    manifest = ex.RunManifest("angles", _params(args), seeds)
    _write_rows(args.out_dir / "angles.csv", manifest, ex.ANGLES_COLUMNS, rows)
    return EXIT_OK


def cmd_gen_testmat(args):
    spec = _gap_spec(args)
    manifest = ex.RunManifest("gen-testmat", _params(args), [spec.seed])
    if args.format == "csv":
        out = args.out or args.out_dir / "testmat.csv"
        fileio.write_csv(gap_matrix(spec), out, manifest.lines())
    else:
        out = args.out or args.out_dir / "testmat.mtx"
        fileio.write_matrix_market(out, triplets=controlled_gap(spec), comments=manifest.lines())
    return EXIT_OK


def read_manifest(path):
    """Parse the ``#``/``%`` manifest header of an output file into a dict."""
    out = {}
    for line in Path(path).read_text().splitlines():
        if line.startswith("%%"):
            continue
        if not line.startswith(("#", "%")):
            if line.strip():
                break
            continue
        key, _, val = line[1:].strip().partition(":")
        out[key.strip()] = val.strip()
    return out


def rerun_argv(path):
    """Rebuild the command line that produced ``path`` from its manifest."""
    man = read_manifest(path)
    command = man["command"]
    params = dict(item.split("=", 1) for item in shlex.split(man["params"]))
    sub = next(a for a in build_parser()._actions if isinstance(a, argparse._SubParsersAction))
    flags = {a.dest: a for a in sub.choices[command]._actions if a.option_strings}
    argv = [command]
    for key, val in params.items():
        action = flags.get(key)
        if action is None:
            continue  # derived values such as p_effective
        opt = action.option_strings[-1]
        if isinstance(action, argparse._StoreTrueAction):
            if val == "True":
                argv.append(opt)
        else:
            argv += [opt, val]
    return argv


COMMANDS = {
    "svd": cmd_svd,
    "image": cmd_image,
    "bounds": cmd_bounds,
    "angles": cmd_angles,
    "gen-testmat": cmd_gen_testmat,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (FormatError, OSError) as exc:
        print(f"randsvd: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NUMERICAL_ERRORS as exc:
        print(f"randsvd: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ParameterError, DimensionError) as exc:
        print(f"randsvd: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
