"""Command-line front door.

Exit codes: 0 when the command succeeded and every check passed, 1 when a
check failed, 2 on usage or input errors.  ``--json`` prints a single
envelope ``{"command", "ok", "exit_code", "result" | "error"}`` with sorted
keys; without it the same report is printed as indented text.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import census, spacefile, streamlab
from .errors import CapExceeded, GquError, MissingDiagonal, NoSquareRefinement, NotStrong, NotUnionClosed
from .gentop import generate_from_base, limit_and_cluster_points_ep, product_topology_base, validate_family
from .product import product_base, product_universe
from .quniform import (TOPOLOGY_CEILING, classify_ep_sequence, decide_space_properties,
                       induced_supratopology, pervin_base, validate_base)
from .relation import Universe
from .seqlab import ep_normalize
from .spacefile import SpaceFile, SpaceFileError


class UsageError(Exception):
    pass


class InputError(Exception):
    def __init__(self, message: str, location: Optional[str] = None, kind: str = "InputError"):
        super().__init__(message)
        self.location = location
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------- input helpers


def _location(exc: GquError, prefix: str) -> str:
    if isinstance(exc, (MissingDiagonal, NoSquareRefinement)):
        return f"{prefix}.base[{exc.element}]"
    if isinstance(exc, (NotUnionClosed, NotStrong)):
        return f"{prefix}.topology"
    return prefix


def _input_error(exc: GquError, prefix: str = "$") -> InputError:
    return InputError(str(exc), _location(exc, prefix), type(exc).__name__)


def _error_dict(exc: GquError, prefix: str = "$") -> dict:
    return {"type": type(exc).__name__, "message": str(exc), "location": _location(exc, prefix)}


def _load(path: str) -> SpaceFile:
    if not path:
        raise InputError("--file is required")
    return spacefile.parse_space(spacefile.load_file(path))


def _topology(sf: SpaceFile, prefix: str = "$"):
    if sf.topology is None:
        raise InputError("a topology is required", f"{prefix}.topology")
    try:
        return validate_family(sf.universe, sf.topology)
    except GquError as exc:
        raise _input_error(exc, prefix) from None


def _base(sf: SpaceFile, prefix: str = "$"):
    if sf.base is None:
        raise InputError("a base is required", f"{prefix}.base")
    try:
        return validate_base(sf.universe, sf.base)
    except GquError as exc:
        raise _input_error(exc, prefix) from None


def _guard_size(u: Universe, what: str):
    if u.size > TOPOLOGY_CEILING:
        raise InputError(f"{what} is limited to {TOPOLOGY_CEILING} points", "$.universe.size", "CeilingExceeded")


# ---------------------------------------------------------------- commands
# each returns (ok, result)


def cmd_validate(args):
    sf = _load(args.file)
    result = {"universe_size": sf.universe.size, "sequences": len(sf.sequences)}
    ok = True
    if sf.topology is not None:
        try:
            mu = validate_family(sf.universe, sf.topology)
            result["topology"] = {"valid": True, "strong": mu.strong, "open_sets": len(mu)}
        except GquError as exc:
            ok = False
            result["topology"] = {"valid": False, "error": _error_dict(exc)}
    if sf.base is not None:
        try:
            b = validate_base(sf.universe, sf.base)
            result["base"] = {"valid": True, "elements": len(b)}
        except GquError as exc:
            ok = False
            result["base"] = {"valid": False, "error": _error_dict(exc)}
    if sf.topology is None and sf.base is None:
        result["note"] = "no topology or base to check"
    return ok, result


def cmd_induce(args):
    sf = _load(args.file)
    b = _base(sf)
    _guard_size(sf.universe, "inducing a topology")
    mu = induced_supratopology(b)
    out = SpaceFile(sf.universe, topology=mu.opens, base=list(b.elements),
                    sequences=sf.sequences, product_factors=sf.product_factors)
    return True, {"strong": mu.strong, "open_sets": len(mu), "space": spacefile.space_to_dict(out)}


def cmd_pervin(args):
    sf = _load(args.file)
    mu = _topology(sf)
    _guard_size(sf.universe, "the Pervin construction")
    try:
        b = pervin_base(mu)
    except GquError as exc:
        raise _input_error(exc) from None
    roundtrip = induced_supratopology(b).masks == mu.masks
    out = SpaceFile(sf.universe, topology=mu.opens, base=list(b.elements),
                    sequences=sf.sequences, product_factors=sf.product_factors)
    return roundtrip, {"elements": len(b), "roundtrip": roundtrip, "space": spacefile.space_to_dict(out)}


def cmd_product(args):
    if not args.file:
        raise InputError("--file is required")
    factors = spacefile.parse_product(spacefile.load_file(args.file))
    bases = [_base(f, f"$.factors[{i}]") for i, f in enumerate(factors)]
    p = product_universe([f.universe for f in factors])
    pb = product_base(bases, p)
    labels = None
    if any(f.universe.labels for f in factors):
        labels = tuple("(" + ",".join(f.universe.label(x) for f, x in zip(factors, t)) + ")"
                       for t in (p.decode(c) for c in p.universe.points()))
    u = Universe(p.universe.size, labels)
    pb_elements = [type(e)(u, e.mask) for e in pb.elements]
    topology = None
    if all(f.topology is not None for f in factors) and u.size <= TOPOLOGY_CEILING:
        mus = [_topology(f, f"$.factors[{i}]") for i, f in enumerate(factors)]
        gen = generate_from_base(p.universe, product_topology_base(mus))
        topology = [type(o)(u, o.mask) for o in gen.opens]
    out = SpaceFile(u, topology=topology, base=pb_elements,
                    product_factors=tuple(f.universe.size for f in factors))
    return True, {"factor_sizes": [f.universe.size for f in factors], "coding": spacefile.CODING_ID,
                  "elements": len(pb_elements), "space": spacefile.space_to_dict(out)}


def cmd_classify(args):
    sf = _load(args.file)
    b = _base(sf)
    if not sf.sequences:
        raise InputError("at least one sequence is required", "$.sequences")
    mu = induced_supratopology(b) if sf.universe.size <= TOPOLOGY_CEILING else None
    rows = []
    for i, s in enumerate(sf.sequences):
        row = {"index": i, "sequence": s.to_dict(), "normalized": ep_normalize(s).to_dict(),
               "classes": classify_ep_sequence(b, s).to_dict()}
        if mu is not None:
            lim, clu = limit_and_cluster_points_ep(mu, s)
            row["limits"] = list(lim.members)
            row["clusters"] = list(clu.members)
        rows.append(row)
    return True, {"sequences": rows}


def cmd_decide(args):
    sf = _load(args.file)
    b = _base(sf)
    _guard_size(sf.universe, "space decisions")
    rep = decide_space_properties(b)
    problems = rep.problems()
    out = rep.to_dict()
    out["problems"] = problems
    return not problems, out


def cmd_replicate_note(args):
    space = streamlab.make_discrete_int_space()
    s = streamlab.note_sequence()
    depth = 100 if args.depth is None else args.depth
    horizon = 300 if args.horizon is None else args.horizon
    radius = 200 if args.candidate_range is None else args.candidate_range
    pc = streamlab.witness_pseudo_cauchy(space, s, depth, horizon)
    gc = streamlab.witness_g_cauchy(space, s, depth, horizon)
    refutations = [streamlab.refute_cluster(space, s, c, horizon) for c in range(-radius, radius + 1)]
    refuted = sum(isinstance(r, streamlab.RefutedByCertificate) for r in refutations)
    ok = isinstance(pc, streamlab.WitnessedAtDepth) and refuted == len(refutations)
    return ok, {
        "space": space.spec,
        "sequence": s.spec,
        "first_terms": s.terms(12),
        "pseudo_cauchy": pc.to_dict(space),
        "g_cauchy": gc.to_dict(space),
        "cluster": {"candidates": [-radius, radius], "checked": len(refutations), "refuted": refuted,
                    "refutations": [r.to_dict(space) for r in refutations]},
    }


def example_candidates(space, radius: int) -> List[tuple]:
    """Every point whose coordinates are naturals up to ``radius`` or the special point."""
    import itertools

    codes = [0] + [streamlab.natural_code(v) for v in range(radius + 1)]
    return list(itertools.product(codes, repeat=space.K))


def cmd_replicate_example(args):
    K = 4 if args.factors is None else args.factors
    depth = 100 if args.depth is None else args.depth
    horizon = 300 if args.horizon is None else args.horizon
    radius = 6 if args.candidate_range is None else args.candidate_range
    if K < 2:
        raise InputError("--factors must be at least 2")
    space = streamlab.make_example_product(K)
    s = streamlab.example_sequence(K)
    levels = [space.level_index((i, k)) for i in range(1, K + 1) for k in range(1, 2 * K + 1)]
    pc = streamlab.witness_pseudo_cauchy(space, s, depth, horizon, levels=levels, max_p=depth)
    refutations = [streamlab.refute_cluster(space, s, c, horizon) for c in example_candidates(space, radius)]
    refuted = sum(isinstance(r, streamlab.RefutedByCertificate) for r in refutations)
    ok = isinstance(pc, streamlab.WitnessedAtDepth) and refuted == len(refutations)
    return ok, {
        "space": space.spec,
        "sequence": s.spec,
        "first_terms": [space.format_point(x) for x in s.terms(2 * K)],
        "levels": [list(space.level_label(i)) for i in levels],
        "pseudo_cauchy": pc.to_dict(space),
        "cluster": {"candidate_range": radius, "checked": len(refutations), "refuted": refuted,
                    "refutations": [r.to_dict(space) for r in refutations]},
    }


def cmd_extract(args):
    try:
        space = streamlab.parse_space(args.space)
        s = streamlab.parse_sequence(args.seq)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    stages = 16 if args.stages is None else args.stages
    cap = 10 ** 6 if args.cap is None else args.cap
    try:
        indices = streamlab.extract_pseudo_cauchy_subsequence(space, s, stages, cap)
    except CapExceeded as exc:
        return False, {"space": space.spec, "sequence": s.spec,
                       "cap_exceeded": {"stage": [exc.stage, exc.j], "cap": exc.cap}}
    except ValueError as exc:
        raise InputError(str(exc)) from None
    schedule = streamlab.triangular_schedule(stages)
    table = []
    in_level = True
    for t, (i, j) in enumerate(schedule):
        r, r1 = indices[2 * t], indices[2 * t + 1]
        inside = space.in_level(j, s[r], s[r1])
        in_level = in_level and inside
        table.append({"stage": [i, j], "indices": [r, r1],
                      "values": [space.format_point(s[r]), space.format_point(s[r1])], "inside": inside})
    values = [s[r] for r in indices]
    increasing = all(a < b for a, b in zip(indices, indices[1:]))
    distinct = len(set(values)) == len(values)
    depth = stages if args.depth is None else args.depth
    sub = streamlab.subsequence(s, indices)
    pc = streamlab.witness_pseudo_cauchy(space, sub, depth, len(indices) - 1)
    witnessed = isinstance(pc, streamlab.WitnessedAtDepth)
    return increasing and distinct and in_level and witnessed, {
        "space": space.spec,
        "sequence": s.spec,
        "stages": stages,
        "cap": cap,
        "indices": indices,
        "stage_table": table,
        "checks": {"strictly_increasing": increasing, "distinct_values": distinct,
                   "stage_pairs_in_level": in_level},
        "subsequence_pseudo_cauchy": pc.to_dict(space),
    }


def cmd_census(args):
    n = 3 if args.n is None else args.n
    mode = args.mode or ("exhaustive" if n <= census.EXHAUSTIVE_BASE_CEILING else
                         "bounded" if n <= 3 else "random")
    try:
        cfg = census.CensusConfig(n=n, mode=mode, seed=args.seed, samples=args.samples)
        return True, {"config": cfg.to_dict(), "counts": census.run_census(cfg)}
    except ValueError as exc:
        raise InputError(str(exc), kind=type(exc).__name__) from None


def cmd_verify(args):
    seed = args.seed
    try:
        if args.target == "pervin":
            n = 3 if args.n is None else args.n
            trials = 0 if args.trials is None else args.trials
            rep = census.verify_pervin_roundtrip(n, random_trials=trials, seed=seed,
                                                 exhaustive=n <= census.TOPOLOGY_CEILING and not args.random_only)
        elif args.target == "lift":
            n = 2 if args.n is None else args.n
            rep = census.verify_continuity_lift(n, trials=200 if args.trials is None else args.trials, seed=seed)
        elif args.target == "product-lemmas":
            cfg = census.CensusConfig(factors=2 if args.factors is None else args.factors,
                                      factor_size=2 if args.n is None else args.n, seed=seed,
                                      trials=1000 if args.trials is None else args.trials)
            rep = census.verify_product_lemmas(cfg)
        else:
            cfg = census.CensusConfig(n=2 if args.n is None else args.n, seed=seed,
                                      max_preamble=args.max_preamble, max_cycle=args.max_cycle)
            rep = census.verify_finite_collapse(cfg)
    except ValueError as exc:
        raise InputError(str(exc), kind=type(exc).__name__) from None
    return rep.ok, rep.to_dict()


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a machine-readable report")

    parser = _Parser(prog="gqu", description="Finite g-quasi uniform spaces: build, check and replicate.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_text, parent=sub):
        p = parent.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, text in (
        ("validate", cmd_validate, "check the topology and base axioms of a space file"),
        ("induce", cmd_induce, "attach the supratopology induced by the base"),
        ("pervin", cmd_pervin, "build the Pervin base of a strong topology"),
        ("product", cmd_product, "product of the factor spaces in a product file"),
        ("classify", cmd_classify, "classify the eventually periodic sequences of a space file"),
        ("decide", cmd_decide, "decide the completeness and Lebesgue properties of a finite space"),
    ):
        add(name, func, text).add_argument("--file", required=True)

    rep = sub.add_parser("replicate", help="replicate the two infinite counterexamples")
    rsub = rep.add_subparsers(dest="which", parser_class=_Parser)
    rsub.required = True
    for name, func, text in (
        ("note", cmd_replicate_note, "1, 1, 2, 2, 3, 3, ... in the discrete integers"),
        ("example", cmd_replicate_example, "the product of the spaces N + {1/i}"),
    ):
        p = add(name, func, text, rsub)
        p.add_argument("--depth", type=int, help="largest index p to witness beyond")
        p.add_argument("--horizon", type=int, help="last index inspected")
        p.add_argument("--candidate-range", type=int, help="bound R of the cluster candidates")
        if name == "example":
            p.add_argument("--factors", type=int, metavar="K", help="number of factors (default 4)")

    p = add("extract", cmd_extract, "extract a pseudo-Cauchy subsequence with distinct terms")
    p.add_argument("--space", default="rational-line:levels=32", help="catalog space, e.g. rational-line:levels=32")
    p.add_argument("--seq", default="harmonic", help="catalog sequence, e.g. harmonic")
    p.add_argument("--stages", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--depth", type=int, help="depth of the pseudo-Cauchy check (default: stages)")

    p = add("census", cmd_census, "count the enumerated topologies and bases")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=census.MODES)
    p.add_argument("--samples", type=int, default=10_000)

    ver = sub.add_parser("verify", help="machine-check a stated property on small universes")
    vsub = ver.add_subparsers(dest="target", parser_class=_Parser)
    vsub.required = True
    for name in ("pervin", "lift", "product-lemmas", "collapse"):
        p = add(name, cmd_verify, f"verify {name}", vsub)
        p.add_argument("--n", type=int)
        p.add_argument("--seed", type=int, default=0)
        if name != "collapse":
            p.add_argument("--trials", type=int)
        if name == "pervin":
            p.add_argument("--random-only", action="store_true")
        if name == "product-lemmas":
            p.add_argument("--factors", type=int, metavar="K")
        if name == "collapse":
            p.add_argument("--max-preamble", type=int, default=4)
            p.add_argument("--max-cycle", type=int, default=4)
    return parser


# ---------------------------------------------------------------- output


def _render(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value and not _flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict) and all(not isinstance(v, (dict, list)) or _flat(v) for v in item.values()):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_inline(v)}" for k, v in item.items()))
            elif isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def _flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, dict) and (not isinstance(v, list) or _flat(v)) for v in value)
    return False


def _inline(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_inline(v)}" for k, v in value.items()) + "}"
    return str(value)


def _command_name(args) -> str:
    name = args.command or ""
    if name == "replicate":
        name += f" {args.which}"
    elif name == "verify":
        name += f" {args.target}"
    return name


def run(argv: Optional[List[str]] = None):
    """Run one command; returns ``(exit_code, envelope)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    command = argv[0] if argv else ""
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("gqu: a command is required (see gqu --help)")
        command = _command_name(args)
        ok, result = args.func(args)
        code = 0 if ok else 1
        envelope = {"command": command, "ok": ok, "exit_code": code, "result": result}
    except UsageError as exc:
        envelope = {"command": command, "ok": False, "exit_code": 2,
                    "error": {"type": "UsageError", "message": str(exc), "location": None}}
    except SpaceFileError as exc:
        envelope = {"command": command, "ok": False, "exit_code": 2,
                    "error": {"type": "SpaceFileError", "message": exc.detail, "location": exc.location}}
    except InputError as exc:
        envelope = {"command": command, "ok": False, "exit_code": 2,
                    "error": {"type": exc.kind, "message": str(exc), "location": exc.location}}
    return envelope["exit_code"], envelope


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    code, envelope = run(argv)
    if "--json" in argv:
        sys.stdout.write(spacefile.dumps(envelope))
    elif "error" in envelope:
        err = envelope["error"]
        where = f" at {err['location']}" if err.get("location") else ""
        print(f"error ({err['type']}){where}: {err['message']}", file=sys.stderr)
    else:
        status = "ok" if envelope["ok"] else "FAILED"
        print(f"{envelope['command']}: {status}")
        print("\n".join(_render(envelope["result"], 1)))
    return code


if __name__ == "__main__":
    sys.exit(main())
