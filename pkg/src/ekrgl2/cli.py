"""Command-line front end for the verification suites.

One subcommand per check family; exit codes: 0 success, 1 theorem-check
failure, 2 configuration error, 3 resource cap exceeded.  JSON output is
deterministic for a fixed configuration (timings go to stderr only).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from collections import Counter

from . import intersect
from .gf import Field, FieldError, divisors
from .groups import (
    GroupSpec,
    build_H,
    build_H_bruteforce,
    build_group,
    is_subgroup,
    orbit,
    stabilizer,
)
from .intersect import (
    H_COSET,
    OTHER,
    STABILIZER_COSET,
    Subset,
    build_fixing_graph,
    case_iii_bound,
    check_corollaries,
    check_lemma_shapes,
    classify_maximum,
    enumerate_maximal_cliques,
    exists_clique,
    extend_to_maximum,
    h_family_is_new,
    is_intersecting,
    is_intersecting_bruteforce,
    max_clique,
    normalize,
    random_intersecting_set,
    to_dimacs,
)
from .linalg2 import all_lines, line_of, mat_vec

EXIT_OK = 0
EXIT_THEOREM = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3


class ConfigError(Exception):
    pass


class ResourceCap(Exception):
    def __init__(self, partial):
        super().__init__("time cap exceeded")
        self.partial = partial


class Deadline:
    def __init__(self, cap_seconds):
        self.start = time.monotonic()
        self.cap = cap_seconds

    def check(self, partial):
        if self.cap and time.monotonic() - self.start > self.cap:
            raise ResourceCap(partial)


def _build_context(args, d):
    field = Field(args.p, args.k)
    if d < 1 or (field.q - 1) % d != 0:
        raise ConfigError(f"d = {d} does not divide q - 1 = {field.q - 1}")
    spec = GroupSpec(field, field.unit_subgroup(d))
    G = build_group(spec)
    graph = build_fixing_graph(G, adjacency_limit=args.adjacency_limit)
    return G, graph


def _base_report(G, args):
    spec = G.spec
    return {
        "schema": 1,
        "p": spec.field.p,
        "k": spec.field.k,
        "q": spec.q,
        "d": spec.d,
        "modulus": list(spec.field.modulus),
        "detgroup": sorted(spec.detgroup.elements),
        "group_size": G.size,
        "theorem_scope": spec.in_theorem_scope,
        "oracle": bool(args.oracle),
    }


def _oracle_fns(args):
    if args.oracle:
        return build_H_bruteforce, is_intersecting_bruteforce
    return build_H, is_intersecting


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args, d, deadline):
    G, graph = _build_context(args, d)
    report = _base_report(G, args)
    target = G.q * G.d
    deadline.check(report)
    result = max_clique(graph)
    report["omega"] = result.size
    report["omega_matches_qd"] = result.size == target
    report["witness"] = sorted(result.members.indices())
    deadline.check(report)
    report["no_larger_clique"] = not exists_clique(graph, target + 1)
    report["witness_classification"] = classify_maximum(G, result.members).classification.kind
    ok = report["omega_matches_qd"] and report["no_larger_clique"]
    if G.spec.in_theorem_scope:
        code = EXIT_OK if ok else EXIT_THEOREM
    else:
        code = EXIT_OK
    return code, report


def cmd_classify(args, d, deadline):
    G, graph = _build_context(args, d)
    h_builder, _ = _oracle_fns(args)
    report = _base_report(G, args)
    target = G.q * G.d
    histogram = Counter()
    h_lines = set()
    if G.size <= args.enum_limit:
        report["mode"] = "exhaustive"
        count = 0
        for clique in enumerate_maximal_cliques(graph, limit=args.enum_limit):
            deadline.check(report)
            if len(clique) != target:
                continue
            cls = classify_maximum(G, clique, h_builder).classification
            histogram[cls.kind] += 1
            if cls.kind == H_COSET:
                h_lines.add(cls.line)
            count += 1
        report["maximum_cliques"] = count
    else:
        report["mode"] = "sampled"
        rng = random.Random(args.seed)
        for _ in range(args.trials):
            deadline.check(report)
            seed = random_intersecting_set(graph, rng)
            full = extend_to_maximum(graph, seed)
            if full is None:
                histogram["EXTENSION_FAILED"] += 1
                continue
            cls = classify_maximum(G, full, h_builder).classification
            histogram[cls.kind] += 1
            if cls.kind == H_COSET:
                h_lines.add(cls.line)
        report["maximum_cliques"] = args.trials
    report["classification_histogram"] = {
        k: histogram.get(k, 0) for k in (STABILIZER_COSET, H_COSET, OTHER)
    }
    report["h_family_distinct_from_stabilizers"] = h_family_is_new(G)
    ok = histogram.get(OTHER, 0) == 0 and "EXTENSION_FAILED" not in histogram
    code = EXIT_OK if (ok or not G.spec.in_theorem_scope) else EXIT_THEOREM
    return code, report


def cmd_maximal(args, d, deadline):
    G, graph = _build_context(args, d)
    report = _base_report(G, args)
    target = G.q * G.d
    sizes = Counter()
    if G.size > args.enum_limit:
        raise ConfigError(
            f"group size {G.size} exceeds enumeration limit {args.enum_limit}"
        )
    for clique in enumerate_maximal_cliques(graph, limit=args.enum_limit):
        deadline.check(report)
        sizes[len(clique)] += 1
    report["maximal_sizes"] = {str(k): sizes[k] for k in sorted(sizes)}
    ok = set(sizes) == {target}
    code = EXIT_OK if (ok or not G.spec.in_theorem_scope) else EXIT_THEOREM
    return code, report


def cmd_extend(args, d, deadline):
    G, graph = _build_context(args, d)
    _, intersecting = _oracle_fns(args)
    report = _base_report(G, args)
    target = G.q * G.d
    failures = 0
    runs = 0

    def attempt(seed):
        nonlocal failures, runs
        runs += 1
        full = extend_to_maximum(graph, seed)
        if (
            full is None
            or len(full) != target
            or not seed.issubset(full)
            or not intersecting(G, full)
        ):
            failures += 1

    for g in graph.connection_indices():
        deadline.check(report)
        attempt(Subset.from_indices(G, [0, g]))
    rng = random.Random(args.seed)
    for _ in range(args.trials):
        deadline.check(report)
        attempt(random_intersecting_set(graph, rng))
    report["extension_runs"] = runs
    report["extension_failures"] = failures
    code = EXIT_OK if (failures == 0 or not G.spec.in_theorem_scope) else EXIT_THEOREM
    return code, report


def _pick_basis(G, F):
    """A basis {v, w} adapted to a normalized intersecting set.

    v is a fixed vector of the first nontrivial member; w is a fixed vector
    of a member outside G_v when one exists, else any independent vector.
    """
    field = G.field
    ids = [i for i in F.indices() if i != 0]
    if not ids:
        return None
    x = G.elements[ids[0]]
    v = next(L for L in all_lines(field) if mat_vec(field, x, L) == L)
    for j in ids[1:]:
        y = G.elements[j]
        if mat_vec(field, y, v) != v:
            w = next(L for L in all_lines(field) if mat_vec(field, y, L) == L)
            return v, w
    w = next(L for L in all_lines(field) if L != line_of(field, v))
    return v, w


def cmd_lemmas(args, d, deadline):
    G, graph = _build_context(args, d)
    h_builder, intersecting = _oracle_fns(args)
    report = _base_report(G, args)
    target = G.q * G.d
    problems = []

    # subgroup and size suite, per line
    for L in all_lines(G.field):
        deadline.check(report)
        stab = stabilizer(G, L)
        if len(stab) != target:
            problems.append(f"|G_v| = {len(stab)} != qd at line {L}")
        H = h_builder(G, L)
        if len(H) != target:
            problems.append(f"|H| = {len(H)} != qd at line {L}")
        if not is_subgroup(G, H):
            problems.append(f"H at line {L} is not a subgroup")
        if not intersecting(G, H):
            problems.append(f"H at line {L} is not intersecting")
        if H != build_H_bruteforce(G, L):
            problems.append(f"basis-only H disagrees with full-domain oracle at {L}")
    report["subgroup_suite_ok"] = not problems

    report["orbit_transitive"] = len(orbit(G, (1, 0))) == G.q * G.q - 1
    if not report["orbit_transitive"]:
        problems.append("orbit of (1,0) is not all nonzero vectors")

    report["case_iii_bound"] = case_iii_bound(G.q, G.d)
    if not report["case_iii_bound"]:
        problems.append("case (iii) inequality fails")

    # randomized shape and bound trials
    rng = random.Random(args.seed)
    shape_violations = 0
    corollary_violations = 0
    trials_run = 0
    for _ in range(args.trials):
        deadline.check(report)
        F = normalize(G, random_intersecting_set(graph, rng))
        basis = _pick_basis(G, F)
        if basis is None:
            continue
        v, w = basis
        trials_run += 1
        if not check_lemma_shapes(G, F, v, w)["ok"]:
            shape_violations += 1
        if not check_corollaries(G, F, v, w)["ok"]:
            corollary_violations += 1
    report["shape_trials"] = trials_run
    report["shape_violations"] = shape_violations
    report["corollary_violations"] = corollary_violations
    if shape_violations or corollary_violations:
        problems.append("randomized shape/bound trials found violations")

    report["problems"] = problems
    code = EXIT_OK if not problems else EXIT_THEOREM
    return code, report


def cmd_export(args, d, deadline):
    G, graph = _build_context(args, d)
    report = _base_report(G, args)
    if args.format == "dimacs":
        payload = to_dimacs(graph)
    else:
        report["connection"] = graph.connection_indices()
        report["elements"] = [list(M) for M in G.elements]
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return EXIT_OK, None


def cmd_tables(args, d, deadline):
    field = Field(args.p, args.k)
    width = len(str(field.q - 1)) + 1
    out = []
    for name, op in (("addition", field.add), ("multiplication", field.mul)):
        out.append(f"{name} table for GF({field.q}):")
        header = " " * width + "".join(f"{b:>{width}}" for b in range(field.q))
        out.append(header)
        for a in range(field.q):
            row = "".join(f"{op(a, b):>{width}}" for b in range(field.q))
            out.append(f"{a:>{width}}" + row)
        out.append("")
    sys.stdout.write("\n".join(out))
    return EXIT_OK, None


COMMANDS = {
    "verify": cmd_verify,
    "classify": cmd_classify,
    "maximal": cmd_maximal,
    "extend": cmd_extend,
    "lemmas": cmd_lemmas,
    "export": cmd_export,
    "tables": cmd_tables,
}

DEFAULT_TRIALS = {"classify": 500, "extend": 1000, "lemmas": 100}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ekrgl2",
        description="Exact verification of intersecting-set theorems for "
        "2x2 linear groups over finite fields.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--p", type=int, required=True, help="field characteristic")
        p.add_argument("--k", type=int, default=1, help="field extension degree")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--d", type=int, help="order of the determinant subgroup")
        group.add_argument(
            "--all-d", action="store_true", help="sweep every divisor of q - 1"
        )
        p.add_argument("--format", choices=["text", "json", "dimacs"], default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--enum-limit", type=int, default=intersect.DEFAULT_ENUM_LIMIT)
        p.add_argument(
            "--adjacency-limit", type=int, default=intersect.DEFAULT_ADJACENCY_LIMIT
        )
        p.add_argument(
            "--time-cap", type=float, default=0.0, help="seconds; 0 disables the cap"
        )
        p.add_argument(
            "--oracle",
            action="store_true",
            help="use brute-force definitions for differential testing",
        )
    return parser


def _emit(args, reports):
    if args.format == "json":
        payload = reports[0] if len(reports) == 1 else reports
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = []
        for rep in reports:
            pairs = ", ".join(f"{key}={rep[key]}" for key in sorted(rep))
            lines.append(pairs)
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.trials is None:
        args.trials = DEFAULT_TRIALS.get(args.mode, 100)
    try:
        field = Field(args.p, args.k)
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.all_d:
        ds = divisors(field.q - 1)
    elif args.d is not None:
        ds = [args.d]
    else:
        print("error: one of --d or --all-d is required", file=sys.stderr)
        return EXIT_CONFIG

    command = COMMANDS[args.mode]
    deadline = Deadline(args.time_cap)
    reports = []
    code = EXIT_OK
    for d in ds:
        started = time.monotonic()
        try:
            sub_code, report = command(args, d, deadline)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except FieldError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except ResourceCap as cap:
            print("error: time cap exceeded", file=sys.stderr)
            if cap.partial:
                cap.partial["partial"] = True
                reports.append(cap.partial)
                _emit(args, reports)
            return EXIT_RESOURCE
        print(
            f"[{args.mode} p={args.p} k={args.k} d={d}] "
            f"{time.monotonic() - started:.2f}s",
            file=sys.stderr,
        )
        if report is not None:
            reports.append(report)
        code = max(code, sub_code)
    if reports:
        _emit(args, reports)
    return code


if __name__ == "__main__":
    sys.exit(main())
