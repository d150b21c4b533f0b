"""Command-line interface: ``regcomplex <command> ...``.

Reports are JSON on stdout (or ``--report FILE``), sorted and free of
timing unless ``--timing`` is given. Exit codes: 0 all checks pass, 1 some
check failed, 2 input error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import formats
from .catalog import catalog, get, universal_polytope
from .cgroup import (cgroup_report, flag_stabilizer_prime_bound, is_string_cgroup,
                     k_vector, lattice_necessary_condition)
from .complex import (axiom_report, f_vector, flag_graph_dot, flags, hasse_dot,
                      section, verify_group_action, are_isomorphic)
from .construction import (action_kernel, build_complex, coset_geometry, derive_system,
                           section_group, verify_reconstruction)
from .derived import skeleton_system, verify_extension, verify_skeleton_kernel
from .errors import InputError, RegComplexError, ResourceLimit

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _system_arg(ref, *, validate=True):
    """A group-spec path, ``catalog:NAME``, or ``schlafli:p,q,...``."""
    if ref.startswith("catalog:"):
        try:
            return get(ref[len("catalog:"):]).system
        except KeyError:
            raise InputError(f"unknown catalog entry {ref[8:]!r}") from None
    if ref.startswith("schlafli:"):
        try:
            symbol = [int(x) for x in ref[len("schlafli:"):].split(",")]
        except ValueError:
            raise InputError(f"bad Schlafli symbol in {ref!r}") from None
        return universal_polytope(symbol)
    return formats.load_system(ref, validate=validate)


def complex_summary(K):
    """Complex-level fields shared by ``verify``, ``build`` and ``analyze``."""
    axioms = axiom_report(K)
    return {
        "rank": K.n,
        "f_vector": f_vector(K),
        "flag_count": len(flags(K)),
        "axioms": {k: v.to_dict() for k, v in axioms.items()},
        "incidence_complex": all(bool(axioms[k]) for k in ("I1", "I2", "I3", "I4")),
        "polytope": bool(axioms["diamond"]),
        "lattice": bool(axioms["lattice"]),
    }


def _complex_ok(summary):
    ax = summary["axioms"]
    return summary["incidence_complex"] and ax["I3"]["holds"] == ax["I3'"]["holds"]


def _verify_system(sys):
    checks = cgroup_report(sys)
    report = {"checks": {k: v.to_dict() for k, v in checks.items()},
              "group_order": sys.gamma.order,
              "subgroup_orders": [r.order for r in sys.subgroups]}
    ok = all(checks.values())
    if ok:
        K = build_complex(sys, check=False)
        report["k_vector"] = k_vector(sys)
        report["string_cgroup"] = is_string_cgroup(sys)
        report["prime_bound"] = flag_stabilizer_prime_bound(sys).to_dict()
        report["lattice_group_condition"] = lattice_necessary_condition(sys).to_dict()
        report["complex"] = complex_summary(K)
        ok = ok and _complex_ok(report["complex"]) and report["prime_bound"]["holds"]
    report["pass"] = bool(ok)
    return report, ok


# -- commands ---------------------------------------------------------------------

def cmd_verify(args):
    return _verify_system(_system_arg(args.spec, validate=False))


def cmd_build(args):
    sys_ = _system_arg(args.spec)
    K = build_complex(sys_)
    if args.out:
        formats.write_atomic(args.out, formats.dumps(formats.complex_to_dict(K)))
    if args.dot:
        text = hasse_dot(K) if args.dot == "hasse" else flag_graph_dot(K)
        target = args.dot_out or (f"{args.out}.{args.dot}.dot" if args.out else None)
        if not target:
            raise InputError("--dot needs --out or --dot-out")
        formats.write_atomic(target, text)
        report_dot = target
    report = {"complex": complex_summary(K), "faces": len(K)}
    if args.dot:
        report["dot"] = report_dot
    if args.out:
        report["out"] = args.out
    return report, True


def cmd_analyze(args):
    K = formats.load_complex(args.complex)
    report = {"complex": complex_summary(K)}
    ok = _complex_ok(report["complex"])
    if K.automorphisms:
        action = verify_group_action(K, K.automorphisms)
        report["action"] = action.to_dict()
        ok = ok and bool(action)
        if action:
            derived = derive_system(K, K.automorphisms, base_flag=K.base_flag)
            rec = verify_reconstruction(K, derived, base_flag=K.base_flag)
            report["derived"] = {"subgroup_orders": [r.order for r in derived.subgroups],
                                 "k_vector": k_vector(derived)}
            report["reconstruction"] = {"holds": bool(rec),
                                        "canonical": rec.data.get("canonical")}
            ok = ok and bool(rec)
    if args.group:
        sys_ = _system_arg(args.group)
        rec = verify_reconstruction(K, sys_)
        report["group_reconstruction"] = {"holds": bool(rec),
                                          "canonical": rec.data.get("canonical")}
        ok = ok and bool(rec)
    report["pass"] = bool(ok)
    return report, ok


def cmd_section(args):
    sys_ = _system_arg(args.spec)
    sub = section_group(sys_, args.i, args.j)
    geo = coset_geometry(sys_)
    S = section(geo.complex, geo.base_flag[args.i + 1], geo.base_flag[args.j + 1])
    L = build_complex(sub)
    iso = are_isomorphic(S, L) is not None
    report = {"i": args.i, "j": args.j, "group_order": sub.gamma.order,
              "section": complex_summary(S), "isomorphic_to_subgroup_complex": iso}
    if args.out:
        formats.write_atomic(args.out, formats.dumps(formats.system_to_dict(sub)))
    report["pass"] = iso
    return report, iso


def cmd_skeleton(args):
    sys_ = _system_arg(args.spec)
    skel = skeleton_system(sys_, args.n)
    K = build_complex(skel)
    report = {"n": args.n, "k_vector": k_vector(skel),
              "subgroup_orders": [r.order for r in skel.subgroups],
              "action_kernel_order": action_kernel(skel).order,
              "complex": complex_summary(K)}
    ok = True
    if args.n < sys_.rank:
        kern = verify_skeleton_kernel(skel)
        report["kernel_check"] = kern.to_dict()
        ok = bool(kern)
    if args.out:
        formats.write_atomic(args.out, formats.dumps(formats.system_to_dict(skel)))
    report["pass"] = ok
    return report, ok


def cmd_extend_verify(args):
    data = formats.extension_from_dict(formats.load_json(args.data))
    result = verify_extension(data, check_lattice=args.lattice)
    report = {"conditions": {k: v.to_dict() for k, v in result["conditions"].items()},
              "certified": result["certified"]}
    for key in ("facets_isomorphic", "facet_count", "ridge_facet_counts",
                "pi_isomorphism", "base_embeds", "lattice"):
        if key in result:
            report[key] = result[key]
    if "extension" in result:
        report["extension"] = complex_summary(result["extension"])
    ok = result["certified"] and all(result["conditions"].values())
    report["pass"] = bool(ok)
    return report, ok


def cmd_catalog(args):
    if args.action == "list":
        rows = [{"name": e.name, "schlafli": list(e.schlafli) if e.schlafli else None,
                 "group_order": e.system.gamma.order, "f_vector": e.f_vector,
                 "negative": e.negative} for e in catalog()]
        return {"entries": rows}, True
    names = [e.name for e in catalog()] if args.name is None else [args.name]
    docs = []
    for name in names:
        try:
            docs.append(formats.system_to_dict(get(name).system))
        except KeyError:
            raise InputError(f"unknown catalog entry {name!r}") from None
    payload = docs[0] if args.name is not None else docs
    if args.out:
        formats.write_atomic(args.out, formats.dumps(payload))
        return {"exported": names, "out": args.out}, True
    return payload, True


def build_parser():
    p = argparse.ArgumentParser(prog="regcomplex",
                                description="Regular incidence complexes from subgroup systems.")
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = p.add_subparsers(dest="command", required=True)
    spec_help = "group-spec JSON path, catalog:NAME or schlafli:p,q,..."

    v = sub.add_parser("verify", help="check the generalized string C-group axioms")
    v.add_argument("spec", help=spec_help)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("build", help="build the coset complex")
    b.add_argument("spec", help=spec_help)
    b.add_argument("--out", help="complex JSON output path")
    b.add_argument("--dot", choices=("hasse", "flags"), help="also export a DOT graph")
    b.add_argument("--dot-out", help="DOT output path (default: next to --out, else stdout)")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="check the axioms of a complex file")
    a.add_argument("complex", help="complex JSON path")
    a.add_argument("--group", help="also test isomorphism with the complex of this group-spec")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("section", help="section between base faces i < j")
    s.add_argument("spec", help=spec_help)
    s.add_argument("i", type=int)
    s.add_argument("j", type=int)
    s.add_argument("--out", help="write the section's group-spec here")
    s.set_defaults(func=cmd_section)

    k = sub.add_parser("skeleton", help="(n-1)-skeleton of a regular polytope")
    k.add_argument("spec", help=spec_help)
    k.add_argument("n", type=int, help="rank of the skeleton complex")
    k.add_argument("--out", help="write the skeleton's group-spec here")
    k.set_defaults(func=cmd_skeleton)

    e = sub.add_parser("extend-verify", help="check extension data")
    e.add_argument("data", help="extension JSON path")
    e.add_argument("--lattice", action="store_true", help="also check the lattice condition")
    e.set_defaults(func=cmd_extend_verify)

    c = sub.add_parser("catalog", help="built-in examples")
    c.add_argument("action", choices=("list", "export"))
    c.add_argument("name", nargs="?", help="entry to export (default: all)")
    c.add_argument("--out", help="output path for export")
    c.set_defaults(func=cmd_catalog)
    return p


def _emit(doc, path, stream=None):
    text = json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"
    if path:
        formats.write_atomic(path, text)
    else:
        (stream or sys.stdout).write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report, ok = args.func(args)
    except ResourceLimit as exc:
        _emit({"error": exc.code, "message": str(exc)}, None, sys.stderr)
        return EXIT_LIMIT
    except (InputError, IndexError) as exc:
        code = getattr(exc, "code", "input-error")
        _emit({"error": code, "message": str(exc)}, None, sys.stderr)
        return EXIT_INPUT
    except RegComplexError as exc:
        _emit({"error": exc.code, "message": str(exc)}, None, sys.stderr)
        return EXIT_FAIL
    if args.timing and isinstance(report, dict):
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    _emit(report, args.report)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
