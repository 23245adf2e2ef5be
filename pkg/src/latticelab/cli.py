"""Single command-line entry point for the whole laboratory.

All randomness flows from one --seed flag (256-bit hex) through
domain-separated derived streams; without the flag a fresh entropy seed
is drawn and printed so any run can be replayed.  Exit codes: 0 success,
1 domain failure (decryption failure, rejected signature, failed attack
precondition), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import attacks, bgv, fileio, glyph, lwe, plwe
from .errors import LatticeLabError
from .gaussian import GaussianParams, fold_to_zq_array, sample_int_array
from .polyring import parse_poly
from .rng import SeededRng
from .zq import Modulus


def _rng_from_args(args) -> SeededRng:
    if args.seed:
        return SeededRng.from_hex(args.seed)
    rng = SeededRng.from_entropy()
    print(f"seed: {rng.seed.hex()}")
    return rng


def _read(path: str) -> str:
    return Path(path).read_text()


def _write_out(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_bits(path: str) -> list[int]:
    return [int(ch) for ch in _read(path) if ch in "01"]


# ---------------------------------------------------------------------------
# keygen


def cmd_keygen(args) -> int:
    rng = _rng_from_args(args)
    if args.scheme == "lwe":
        params = lwe.derive_params(args.n)
        sk, pk = lwe.keygen(params, rng.derive("lwe-keygen"))
        Path(args.out_secret).write_text(fileio.dump_lwe_secret(sk, params))
        Path(args.out_public).write_text(fileio.dump_lwe_public(pk))
    elif args.scheme == "plwe":
        params = plwe.default_params(args.n, sigma=args.sigma, floor=args.q_floor)
        kp = plwe.keygen(params, rng.derive("plwe-keygen"))
        Path(args.out_secret).write_text(fileio.dump_plwe_secret(kp, params))
        Path(args.out_public).write_text(fileio.dump_plwe_public(kp, params))
    elif args.scheme == "glyph":
        params = glyph.GlyphParams(n=args.n)
        sk, pk = glyph.keygen(params, rng.derive("glyph-keygen"))
        Path(args.out_secret).write_text(fileio.dump_glyph_secret(sk, params))
        Path(args.out_public).write_text(fileio.dump_glyph_public(pk, params))
    else:  # bgv
        params = bgv.setup(args.m, args.p, args.r, args.levels,
                           growth=args.growth, base=args.base)
        sk = bgv.keygen(params, rng.derive("bgv-keygen"))
        Path(args.out_params).write_text(fileio.dump_bgv_params(params))
        Path(args.out_secret).write_text(fileio.dump_bgv_secret(sk))
    return 0


# ---------------------------------------------------------------------------
# encrypt / decrypt


def cmd_encrypt(args) -> int:
    rng = _rng_from_args(args)
    if args.scheme == "lwe":
        pk = fileio.load_lwe_public(_read(args.public))
        bits = _read_bits(args.message)
        cts = [
            lwe.encrypt_bit(pk, z, rng.derive(f"lwe-bit-{i}"))
            for i, z in enumerate(bits)
        ]
        _write_out(args, fileio.dump_lwe_ciphertext(cts, pk.params))
    elif args.scheme == "plwe":
        pk, params = fileio.load_plwe_public(_read(args.public))
        bits = _read_bits(args.message)
        n = params.n
        blocks = []
        for i in range(0, max(len(bits), 1), n):
            block = bits[i : i + n]
            block += [0] * (n - len(block))  # zero-pad the final block
            blocks.append(
                plwe.encrypt(pk, block, params, rng.derive(f"plwe-block-{i // n}"))
            )
        _write_out(args, fileio.dump_plwe_ciphertext(blocks, params))
    else:  # bgv
        params = fileio.load_bgv_params(_read(args.params))
        sk = fileio.load_bgv_secret(_read(args.secret))
        pt = parse_poly(_read(args.message))
        ct = bgv.encrypt(pt, sk, params, rng.derive("bgv-encrypt"))
        _write_out(args, fileio.dump_bgv_ciphertext(ct, params))
    return 0


def cmd_decrypt(args) -> int:
    if args.scheme == "lwe":
        sk, params = fileio.load_lwe_secret(_read(args.secret))
        cts, _ = fileio.load_lwe_ciphertext(_read(args.infile))
        bits = "".join(str(lwe.decrypt_bit(sk, ct, params)) for ct in cts)
        _write_out(args, bits + "\n")
    elif args.scheme == "plwe":
        s, params = fileio.load_plwe_secret(_read(args.secret))
        blocks, _ = fileio.load_plwe_ciphertext(_read(args.infile))
        bits = "".join("".join(map(str, plwe.decrypt(s, ct))) for ct in blocks)
        _write_out(args, bits + "\n")
    else:  # bgv
        params = fileio.load_bgv_params(_read(args.params))
        sk = fileio.load_bgv_secret(_read(args.secret))
        ct = fileio.load_bgv_ciphertext(_read(args.infile))
        pt = bgv.decrypt(ct, sk, params)
        _write_out(args, ",".join(map(str, pt)) + "\n")
    return 0


# ---------------------------------------------------------------------------
# sign / verify


def cmd_sign(args) -> int:
    rng = _rng_from_args(args)
    sk, params = fileio.load_glyph_secret(_read(args.secret))
    pk, _ = fileio.load_glyph_public(_read(args.public))
    message = Path(args.message).read_bytes()
    sig, iters = glyph.sign(sk, pk, message, params, rng.derive("glyph-sign"))
    print(f"signed in {iters} iteration(s)", file=sys.stderr)
    _write_out(args, fileio.dump_glyph_signature(sig, params))
    return 0


def cmd_verify(args) -> int:
    pk, params = fileio.load_glyph_public(_read(args.public))
    sig, _ = fileio.load_glyph_signature(_read(args.signature))
    message = Path(args.message).read_bytes()
    result = glyph.verify(pk, message, sig, params)
    if not result.accepted:
        print(f"reject: {result.reason}", file=sys.stderr)
        return 1
    print("accept")
    return 0


# ---------------------------------------------------------------------------
# scan / attack / smear


def cmd_scan(args) -> int:
    report = attacks.weakness_scan(parse_poly(args.f), Modulus(args.q), r_max=args.r_max)
    _write_out(args, report.render_text() + "\n")
    return 0


def cmd_attack(args) -> int:
    samples, params = fileio.load_plwe_samples(_read(args.samples))
    if args.params:
        params = fileio.load_plwe_params(_read(args.params))
    if args.alg == 1:
        verdicts = attacks.decide_alg1(samples, params, t=args.t)
    else:
        if args.alpha is None:
            raise LatticeLabError("--alpha is required for algorithm 2")
        verdicts = attacks.decide_alg2(samples, params, args.alpha, t=args.t,
                                       r_max=args.r_max)
    lines = [
        f"{i}\t{v.label}\t{v.surviving_secrets}" for i, v in enumerate(verdicts)
    ]
    _write_out(args, "\n".join(lines) + "\n")
    return 0


def cmd_smear(args) -> int:
    rng = _rng_from_args(args)
    params = fileio.load_plwe_params(_read(args.params))
    est = attacks.smearing_estimate(params, args.alpha, args.trials, args.t,
                                    rng.derive("smear"))
    _write_out(args, f"{est!r}\n")
    return 0


# ---------------------------------------------------------------------------
# bgv-eval


def _parse_binding(spec: str) -> tuple[str, str]:
    if "=" not in spec:
        raise LatticeLabError(f"binding must look like wire=file, got {spec!r}")
    wire, path = spec.split("=", 1)
    return wire, path


def cmd_bgv_eval(args) -> int:
    params = fileio.load_bgv_params(_read(args.params))
    inputs = {}
    for spec in args.inputs:
        wire, path = _parse_binding(spec)
        inputs[wire] = fileio.load_bgv_ciphertext(_read(path))
    lines = _read(args.circuit).splitlines()
    wires = bgv.eval_circuit(lines, inputs, params)
    for spec in args.outputs:
        wire, path = _parse_binding(spec)
        if wire not in wires:
            raise LatticeLabError(f"no wire named {wire!r}")
        Path(path).write_text(fileio.dump_bgv_ciphertext(wires[wire], params))
    return 0


# ---------------------------------------------------------------------------
# sample / bench


def cmd_sample(args) -> int:
    rng = _rng_from_args(args).derive("sample")
    if args.dist == "gaussian":
        gp = GaussianParams(sigma=args.sigma)
        if args.q:
            draws = fold_to_zq_array(gp, Modulus(args.q), rng, args.count)
        else:
            draws = sample_int_array(gp, rng, args.count)
        _write_out(args, "\n".join(str(int(d)) for d in draws) + "\n")
    elif args.dist == "uniform":
        draws = rng.uniform_array(args.q, args.count)
        _write_out(args, "\n".join(str(int(d)) for d in draws) + "\n")
    else:
        params = fileio.load_plwe_params(_read(args.params))
        if args.dist == "plwe-oracle":
            s, sparams = fileio.load_plwe_secret(_read(args.secret))
            if sparams.ring != params.ring:
                raise LatticeLabError("secret key ring does not match params")
            samples = [
                plwe.oracle_sample(params, s, rng.derive(f"oracle-{i}"))
                for i in range(args.count)
            ]
        else:  # plwe-uniform
            samples = [
                plwe.uniform_sample_pair(params, rng.derive(f"uniform-{i}"))
                for i in range(args.count)
            ]
        _write_out(args, fileio.dump_plwe_samples(samples, params))
    return 0


def cmd_bench(args) -> int:
    rng = _rng_from_args(args)
    n = args.n
    rows = [("operation", "seconds", "detail")]

    lwe_params = lwe.derive_params(n)
    t0 = time.perf_counter()
    lwe_sk, lwe_pk = lwe.keygen(lwe_params, rng.derive("bench-lwe"))
    rows.append(("lwe-keygen", f"{time.perf_counter() - t0:.4f}",
                 f"pk={lwe.public_key_size(lwe_params)} residues"))

    t0 = time.perf_counter()
    ct = lwe.encrypt_bit(lwe_pk, 1, rng.derive("bench-lwe-enc"))
    rows.append(("lwe-encrypt-bit", f"{time.perf_counter() - t0:.4f}",
                 f"ct={n + 1} residues"))
    lwe.decrypt_bit(lwe_sk, ct, lwe_params)

    plwe_params = plwe.default_params(n)
    t0 = time.perf_counter()
    kp = plwe.keygen(plwe_params, rng.derive("bench-plwe"))
    rows.append(("plwe-keygen", f"{time.perf_counter() - t0:.4f}",
                 f"pk={plwe.public_key_size(plwe_params)} residues"))

    t0 = time.perf_counter()
    plwe.encrypt((kp.a, kp.b), [0] * n, plwe_params, rng.derive("bench-plwe-enc"))
    rows.append(("plwe-encrypt-block", f"{time.perf_counter() - t0:.4f}",
                 f"ct={2 * n} residues"))

    ratio = lwe.public_key_size(lwe_params) / plwe.public_key_size(plwe_params)
    rows.append(("pk-size-ratio", "-", f"lwe/plwe={ratio:.1f}x"))

    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    out = "\n".join(
        "  ".join(col.ljust(w) for col, w in zip(row, widths)) for row in rows
    )
    _write_out(args, out + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticelab",
        description="Lattice cryptography laboratory: LWE, PLWE/LPR, GLYPH, BGV, "
        "and the PLWE evaluation attacks.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_seed(p):
        p.add_argument("--seed", help="256-bit hex seed for reproducible runs")

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", required=True, choices=["lwe", "plwe", "glyph", "bgv"])
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--sigma", type=float, default=3.2)
    p.add_argument("--q-floor", type=int, default=4096)
    p.add_argument("--m", type=int, default=32, help="bgv: cyclotomic index")
    p.add_argument("--p", type=int, default=2, help="bgv: plaintext prime")
    p.add_argument("--r", type=int, default=1, help="bgv: plaintext exponent")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--growth", type=float, default=1.0)
    p.add_argument("--base", type=int, default=128)
    p.add_argument("--out-secret", default="secret.key")
    p.add_argument("--out-public", default="public.key")
    p.add_argument("--out-params", default="params.txt")
    add_seed(p)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message")
    p.add_argument("--scheme", required=True, choices=["lwe", "plwe", "bgv"])
    p.add_argument("--public", help="public key file (lwe/plwe)")
    p.add_argument("--params", help="parameter file (bgv)")
    p.add_argument("--secret", help="secret key file (bgv is symmetric-key)")
    p.add_argument("--message", required=True)
    p.add_argument("--out")
    add_seed(p)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext")
    p.add_argument("--scheme", required=True, choices=["lwe", "plwe", "bgv"])
    p.add_argument("--secret", required=True)
    p.add_argument("--params", help="parameter file (bgv)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("sign", help="sign a message (glyph)")
    p.add_argument("--scheme", choices=["glyph"], default="glyph")
    p.add_argument("--secret", required=True)
    p.add_argument("--public", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--out")
    add_seed(p)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature (glyph)")
    p.add_argument("--scheme", choices=["glyph"], default="glyph")
    p.add_argument("--public", required=True)
    p.add_argument("--message", required=True)
    p.add_argument("--signature", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="parameter weakness scan for (f, q)")
    p.add_argument("--f", required=True, help="coefficient CSV, lowest first")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("attack", help="run a PLWE evaluation distinguisher")
    p.add_argument("--alg", type=int, required=True, choices=[1, 2])
    p.add_argument("--params", help="plwe parameter file (defaults to samples header)")
    p.add_argument("--samples", required=True)
    p.add_argument("--alpha", type=int, help="root of f mod q (algorithm 2)")
    p.add_argument("--t", type=float, default=3.0)
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("smear", help="Monte-Carlo smearing estimate")
    p.add_argument("--params", required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--t", type=float, default=3.0)
    p.add_argument("--out")
    add_seed(p)
    p.set_defaults(func=cmd_smear)

    p = sub.add_parser("bgv-eval", help="evaluate an ADD/MUL circuit homomorphically")
    p.add_argument("--params", required=True)
    p.add_argument("--circuit", required=True)
    p.add_argument("--in", dest="inputs", action="append", default=[],
                   metavar="WIRE=FILE")
    p.add_argument("--out", dest="outputs", action="append", default=[],
                   metavar="WIRE=FILE")
    p.set_defaults(func=cmd_bgv_eval)

    p = sub.add_parser("sample", help="draw from the lab's distributions")
    p.add_argument("--dist", required=True,
                   choices=["gaussian", "uniform", "plwe-oracle", "plwe-uniform"])
    p.add_argument("--sigma", type=float, default=3.2)
    p.add_argument("--q", type=int)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--params", help="plwe parameter file")
    p.add_argument("--secret", help="plwe secret key (oracle samples)")
    p.add_argument("--out")
    add_seed(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bench", help="operation timings and key sizes")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--out")
    add_seed(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "encrypt" and args.scheme in ("lwe", "plwe") and not args.public:
        parser.error(f"--public is required for scheme {args.scheme}")
    if args.verb in ("encrypt", "decrypt") and args.scheme == "bgv" and not args.params:
        parser.error("--params is required for scheme bgv")
    if args.verb == "encrypt" and args.scheme == "bgv" and not args.secret:
        parser.error("--secret is required for scheme bgv")
    if args.verb == "sample" and args.dist == "uniform" and not args.q:
        parser.error("--q is required for --dist uniform")
    if args.verb == "sample" and args.dist.startswith("plwe") and not args.params:
        parser.error(f"--params is required for --dist {args.dist}")
    if args.verb == "sample" and args.dist == "plwe-oracle" and not args.secret:
        parser.error("--secret is required for --dist plwe-oracle")
    try:
        return args.func(args)
    except LatticeLabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
