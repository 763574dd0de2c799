"""Command-line front end; every command emits one deterministic JSON report.

Exit codes: 0 success, 1 a verification failed, 2 malformed input,
3 monoid axiom violation, 64 usage error.  Timing goes to stderr so that
report bytes depend only on the inputs and the seed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources

from .errors import (
    AxiomViolationError,
    GrothlocError,
    InvalidInputError,
    TorsionWitnessError,
)
from .grothendieck import (
    GrothElement,
    GrothendieckGroup,
    build_total_order,
    monoid_groth_structure,
    presentation_matrix,
    smith_normal_form,
    structure_from_snf,
)
from .localization import (
    LocalizedRing,
    MultiplicativeSet,
    decompose_fraction,
    groth_units_embedding,
    groth_units_iso,
    kx_counterexample_check,
    one_plus_ideal_check,
    sum_components,
)
from .isomorphisms import HMapContext, laurent_iso, verify_isomorphism
from .monoid import (
    FreeCommutativeMonoid,
    MonoidPresentation,
    is_cancellative,
    monoid_from_dict,
    quasi_zero_submonoid,
    sample_element,
)
from .ring import (
    IntegerRing,
    ModRing,
    MonoidRing,
    _deg_to_json,
    monomial_is_nonzerodivisor,
    ring_from_dict,
)
from .rng import Lcg64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _common(sub):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--samples", type=int, default=200)
    sub.add_argument("--depth", type=int, default=8)
    sub.add_argument("--out", default=None, help="report path (default stdout)")


def _load_json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad JSON argument: {exc}") from exc


def _load_monoid_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from exc
    return monoid_from_dict(data)


def _structure_json(s) -> dict:
    return {"free_rank": s.free_rank, "torsion": list(s.torsion_invariants)}


def _groth_key_json(key: GrothElement) -> list:
    return [_deg_to_json(key.first), _deg_to_json(key.second)]


# ---------------------------------------------------------------------------
# commands


def _cmd_monoid_check(args):
    m = _load_monoid_file(args.file)
    results = {"axioms_ok": True}
    try:
        results["cancellative"] = is_cancellative(m)
    except GrothlocError:
        results["cancellative"] = None
    checks = {}
    if m.is_finite:
        qz = quasi_zero_submonoid(m)
        group = GrothendieckGroup(m)
        trivial = group.is_trivial()
        results["quasi_zero_size"] = len(qz)
        results["carrier_size"] = m.size()
        results["groth_trivial"] = trivial
        checks["quasi_zero_all_iff_trivial"] = (len(qz) == m.size()) == trivial
    elif isinstance(m, FreeCommutativeMonoid):
        results["groth_trivial"] = m.rank == 0
    elif isinstance(m, MonoidPresentation):
        s = monoid_groth_structure(m)
        results["groth_trivial"] = s.free_rank == 0 and not s.torsion_invariants
    ok = all(checks.values())
    return {"results": results, "checks": checks}, ok


def _cmd_groth_compute(args):
    m = _load_monoid_file(args.monoid)
    s = monoid_groth_structure(m)
    return {"results": _structure_json(s)}, True


def _cmd_groth_order(args):
    m = _load_monoid_file(args.monoid)
    if isinstance(m, FreeCommutativeMonoid):
        m = MonoidPresentation(m.rank, ())
    if not isinstance(m, MonoidPresentation):
        raise InvalidInputError(
            "total orders are built from presentation or free descriptions"
        )
    snf = smith_normal_form(presentation_matrix(m), ncols=m.generators)
    s = structure_from_snf(snf)
    results = {"structure": _structure_json(s)}
    try:
        order = build_total_order(s, snf)
    except TorsionWitnessError as exc:
        results["orderable"] = False
        results["torsion_witness"] = list(exc.element)
        results["torsion_order"] = exc.order
        return {"results": results, "checks": {}}, True
    results["orderable"] = True
    results["certificate"] = {
        "free_positions": order.free_positions,
        "column_transform": snf.V,
    }
    group = GrothendieckGroup(m)
    rng = Lcg64(args.seed)
    compatible = True
    total = True
    transitive = True
    for _ in range(args.samples):
        xs = [
            GrothElement(sample_element(m, rng, 4), sample_element(m, rng, 4))
            for _ in range(3)
        ]
        x, y, z = xs
        sxy = order.compare(x, y)
        if sxy != -order.compare(y, x):
            total = False
        if sxy == 0 and not group.eq(x, y):
            total = False
        if sxy < 0:
            if order.compare(group.add(x, z), group.add(y, z)) >= 0:
                compatible = False
            if order.compare(y, z) < 0 and order.compare(x, z) >= 0:
                transitive = False
    checks = {
        "sampled_compatible": compatible,
        "sampled_total": total,
        "sampled_transitive": transitive,
    }
    return {"results": results, "checks": checks}, all(checks.values())


def _cmd_mring_nzd(args):
    ring = ring_from_dict(_load_json_arg(args.ring))
    m = _load_monoid_file(args.monoid)
    mring = MonoidRing(ring, m)
    if args.degree is not None:
        deg = _load_json_arg(args.degree)
        deg = tuple(deg) if isinstance(deg, list) else deg
        flag = monomial_is_nonzerodivisor(mring, deg)
        return {
            "results": {"degree": _deg_to_json(mring.monoid.validate(deg)),
                        "nonzerodivisor": flag},
            "checks": {},
        }, True
    witness = [
        _deg_to_json(d)
        for d in mring.monoid.elements()
        if not monomial_is_nonzerodivisor(mring, d)
    ]
    all_nzd = not witness
    checks = {"matches_cancellativity": all_nzd == is_cancellative(m)}
    return {
        "results": {"all_nonzerodivisors": all_nzd, "zerodivisor_degrees": witness},
        "checks": checks,
    }, all(checks.values())


def _mring_domain(mring: MonoidRing) -> bool:
    coeff = mring.coeff_ring
    coeff_domain = isinstance(coeff, IntegerRing) or (
        isinstance(coeff, ModRing) and coeff.is_field
    )
    return coeff_domain and isinstance(mring.monoid, FreeCommutativeMonoid)


def _cmd_localize_decompose(args):
    ring = ring_from_dict(_load_json_arg(args.ring))
    m = _load_monoid_file(args.monoid)
    mring = MonoidRing(ring, m)
    sgens = [mring.from_list(g) for g in _load_json_arg(args.sgens)]
    nzd = True if (_mring_domain(mring) and all(not g.is_zero() for g in sgens)) else None
    sset = MultiplicativeSet(mring, sgens, nzd=nzd, depth=args.depth)
    loc = LocalizedRing(mring, sset)
    fr = _load_json_arg(args.fraction)
    if not isinstance(fr, dict) or "num" not in fr:
        raise InvalidInputError('fraction JSON needs "num" and "den_witness"')
    num = mring.from_list(fr["num"])
    witness = tuple(fr.get("den_witness", []))
    for i in witness:
        if not isinstance(i, int) or not 0 <= i < len(sgens):
            raise InvalidInputError(f"witness index {i!r} out of range")
    f = loc.from_witness(num, witness)
    parts = decompose_fraction(loc, f)
    ordered = sorted(parts.items(), key=lambda kv: json.dumps(_groth_key_json(kv[0])))
    rank_one = isinstance(m, FreeCommutativeMonoid) and m.rank == 1
    components = {}
    for key, part in ordered:
        entry = {"num": mring.to_list(part.num), "den": mring.to_list(part.den)}
        if rank_one:
            # integer reading of the class [m, n] for a single free direction
            entry["degree"] = key.first[0] - key.second[0]
        components[json.dumps(_groth_key_json(key), separators=(",", ":"))] = entry
    back = sum_components(loc, [part for _, part in ordered])
    group = loc.groth_group
    distinct = all(
        not group.eq(ordered[i][0], ordered[j][0])
        for i in range(len(ordered))
        for j in range(i + 1, len(ordered))
    )
    idempotent = all(
        len(decompose_fraction(loc, part)) <= 1 for _, part in ordered
    )
    checks = {
        "sum_back": loc.eq(back, f),
        "keys_pairwise_distinct": distinct,
        "idempotent": idempotent,
    }
    return {
        "results": {"component_count": len(components), "components": components},
        "checks": checks,
    }, all(checks.values())


def _cmd_localize_units(args):
    ring = ring_from_dict(_load_json_arg(args.ring))
    if not isinstance(ring, ModRing):
        raise InvalidInputError("unit enumeration works over Z/n bases")
    sgens = _load_json_arg(args.sgens)
    if not isinstance(sgens, list):
        raise InvalidInputError("sgens must be a JSON list of ring elements")
    sset = MultiplicativeSet(ring, sgens)
    loc = LocalizedRing(ring, sset)
    emb = groth_units_embedding(sset, loc)
    iso = groth_units_iso(sset, loc)
    results = {
        "closure_size": len(sset.closure),
        "saturation_size": len(iso.saturation.elements),
        "units": iso.unit_order,
        "groth_order": iso.groth_order,
        "iso": iso.iso,
    }
    checks = {
        "embedding_morphism": emb.morphism_ok,
        "embedding_injective": emb.injective,
        "iso_ok": iso.iso,
    }
    return {"results": results, "checks": checks}, all(checks.values())


def _cmd_iso_verify(args):
    ring = ring_from_dict(_load_json_arg(args.ring))
    m = _load_monoid_file(args.monoid)
    sgens = _load_json_arg(args.sgens)
    if not isinstance(sgens, list):
        raise InvalidInputError("sgens must be a JSON list of ring elements")
    nzd = None
    if isinstance(ring, IntegerRing):
        if any(ring.is_zero(ring.validate(g)) for g in sgens):
            raise InvalidInputError("zero generator over Z is not supported")
        nzd = True
    ctx = HMapContext(ring, m, sgens, nzd=nzd, depth=args.depth)
    report = verify_isomorphism(ctx, samples=args.samples, seed=args.seed)
    ok = report.pop("all_ok")
    report["roundtrip_ok"] = report["roundtrip_back_ok"] and report["roundtrip_forth_ok"]
    report["injective_ok"] = report["kernel_trivial_ok"]
    return {"results": report, "checks": {"all_ok": ok}}, ok


def _cmd_iso_laurent(args):
    ring = ring_from_dict(_load_json_arg(args.ring))
    report = laurent_iso(ring, args.rank, samples=args.samples, seed=args.seed)
    ok = report.pop("all_ok")
    return {"results": report, "checks": {"all_ok": ok}}, ok


# ---------------------------------------------------------------------------
# corpus


def _corpus_dir():
    return resources.files("grothloc") / "corpus"


def _run_corpus_entry(entry: dict, seed: int) -> dict:
    kind = entry["kind"]
    if kind == "monoid":
        m = monoid_from_dict(entry["monoid"])
        actual = {}
        try:
            actual["cancellative"] = is_cancellative(m)
        except GrothlocError:
            actual["cancellative"] = None
        if m.is_finite:
            actual["quasi_zero_size"] = len(quasi_zero_submonoid(m))
            actual["groth_trivial"] = GrothendieckGroup(m).is_trivial()
    elif kind == "groth":
        m = monoid_from_dict(entry["monoid"])
        actual = {"structure": _structure_json(monoid_groth_structure(m))}
    elif kind == "localize_units":
        ring = ring_from_dict(entry["ring"])
        sset = MultiplicativeSet(ring, entry["sgens"])
        loc = LocalizedRing(ring, sset)
        iso = groth_units_iso(sset, loc)
        actual = {
            "unit_count": iso.unit_order,
            "groth_order": iso.groth_order,
            "iso": iso.iso,
        }
    elif kind == "one_plus_ideal":
        ring = ring_from_dict(entry["ring"])
        rep = one_plus_ideal_check(ring, entry["ideal_gens"])
        actual = {k: rep[k] for k in entry["expected"]}
    elif kind == "kx":
        rep = kx_counterexample_check(
            entry.get("modulus", 5), samples=entry.get("samples", 30), seed=seed
        )
        actual = {k: rep[k] for k in entry["expected"]}
    elif kind == "iso_verify":
        ring = ring_from_dict(entry["ring"])
        m = monoid_from_dict(entry["monoid"])
        ctx = HMapContext(ring, m, entry.get("sgens", []))
        rep = verify_isomorphism(ctx, samples=entry.get("samples", 60), seed=seed)
        actual = {k: rep[k] for k in entry["expected"]}
    elif kind == "iso_laurent":
        ring = ring_from_dict(entry["ring"])
        rep = laurent_iso(
            ring, entry["rank"], samples=entry.get("samples", 60), seed=seed
        )
        actual = {k: rep[k] for k in entry["expected"]}
    else:
        raise InvalidInputError(f"unknown corpus entry kind {kind!r}")
    expected = entry["expected"]
    ok = all(actual.get(k) == v for k, v in expected.items()) and set(
        expected
    ) <= set(actual)
    return {
        "name": entry["name"],
        "provenance": entry.get("provenance", ""),
        "expected": expected,
        "actual": actual,
        "ok": ok,
    }


def _cmd_corpus_run(args):
    if args.dir is not None:
        with open(f"{args.dir}/corpus.json", "r", encoding="utf-8") as fh:
            specs = json.load(fh)
    else:
        specs = json.loads(
            (_corpus_dir() / "corpus.json").read_text(encoding="utf-8")
        )
    rows = [
        _run_corpus_entry(entry, args.seed)
        for entry in sorted(specs["entries"], key=lambda e: e["name"])
    ]
    passed = sum(r["ok"] for r in rows)
    results = {
        "entries": rows,
        "total": len(rows),
        "passed": passed,
    }
    return {"results": results, "checks": {"all_ok": passed == len(rows)}}, (
        passed == len(rows)
    )


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="grothloc")
    top = parser.add_subparsers(dest="group_cmd", required=True)

    monoid = top.add_parser("monoid").add_subparsers(dest="sub", required=True)
    check = monoid.add_parser("check")
    check.add_argument("file")
    _common(check)
    check.set_defaults(func=_cmd_monoid_check)

    groth = top.add_parser("groth").add_subparsers(dest="sub", required=True)
    compute = groth.add_parser("compute")
    compute.add_argument("--monoid", required=True)
    _common(compute)
    compute.set_defaults(func=_cmd_groth_compute)
    order = groth.add_parser("order")
    order.add_argument("--monoid", required=True)
    _common(order)
    order.set_defaults(func=_cmd_groth_order)

    mring = top.add_parser("mring").add_subparsers(dest="sub", required=True)
    nzd = mring.add_parser("nzd")
    nzd.add_argument("--ring", required=True)
    nzd.add_argument("--monoid", required=True)
    nzd.add_argument("--degree", default=None)
    _common(nzd)
    nzd.set_defaults(func=_cmd_mring_nzd)

    localize = top.add_parser("localize").add_subparsers(dest="sub", required=True)
    decompose = localize.add_parser("decompose")
    decompose.add_argument("--ring", required=True)
    decompose.add_argument("--monoid", required=True)
    decompose.add_argument("--sgens", required=True)
    decompose.add_argument("--fraction", required=True)
    _common(decompose)
    decompose.set_defaults(func=_cmd_localize_decompose)
    units = localize.add_parser("units")
    units.add_argument("--ring", required=True)
    units.add_argument("--sgens", required=True)
    _common(units)
    units.set_defaults(func=_cmd_localize_units)

    iso = top.add_parser("iso").add_subparsers(dest="sub", required=True)
    verify = iso.add_parser("verify")
    verify.add_argument("--ring", required=True)
    verify.add_argument("--monoid", required=True)
    verify.add_argument("--sgens", required=True)
    _common(verify)
    verify.set_defaults(func=_cmd_iso_verify)
    laurent = iso.add_parser("laurent")
    laurent.add_argument("--ring", required=True)
    laurent.add_argument("--rank", type=int, required=True)
    _common(laurent)
    laurent.set_defaults(func=_cmd_iso_laurent)

    corpus = top.add_parser("corpus").add_subparsers(dest="sub", required=True)
    run = corpus.add_parser("run")
    run.add_argument("--dir", default=None)
    _common(run)
    run.set_defaults(func=_cmd_corpus_run)

    return parser


def _inputs_digest(args) -> str:
    skip = {"func", "out", "group_cmd", "sub"}
    inputs = {
        k: v
        for k, v in vars(args).items()
        if k not in skip and v is not None and isinstance(v, (str, int, bool))
    }
    blob = json.dumps(inputs, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 64
    started = time.monotonic()
    command = f"{args.group_cmd} {args.sub}" if args.sub else args.group_cmd
    try:
        body, ok = args.func(args)
    except AxiomViolationError as exc:
        _emit(
            {
                "command": command,
                "error": "axiom-violation",
                "law": exc.law,
                "witness": list(exc.witness),
            },
            getattr(args, "out", None),
        )
        return 3
    except GrothlocError as exc:
        _emit(
            {"command": command, "error": type(exc).__name__, "detail": str(exc)},
            getattr(args, "out", None),
        )
        return 2
    report = {
        "command": command,
        "seed": getattr(args, "seed", 0),
        "inputs_sha256": _inputs_digest(args),
    }
    report.update(body)
    report.setdefault("checks", {})
    report["ok"] = ok
    _emit(report, args.out)
    elapsed = int((time.monotonic() - started) * 1000)
    print(f"elapsed_ms={elapsed}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
