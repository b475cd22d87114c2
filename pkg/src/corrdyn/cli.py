"""Command line front end: job execution, JSON and DOT emission.

Every run prints one JSON document {job, result, budgets, seed, version}
with sorted keys, so identical jobs with identical seeds produce byte
identical output.  Exit codes: 0 success, 2 parse errors, 3 violated
preconditions or exceeded budgets.
"""

import argparse
import json
import random
import sys

from . import analysis, oper
from .corr import (
    FORWARD,
    as_morphism,
    compose,
    corr_sum,
    fiber,
    edge_records,
    transpose,
)
from .errors import CorrdynError, InfiniteField, ParseError
from .fields import enumerate_elements
from .graph import (
    _ambient_for,
    backward_kernel_search,
    classify_set,
    complete_set_search,
    exceptional_set_morphism,
    report_to_dot,
    report_to_json,
)
from .parse import (
    RATIONAL,
    UNIVARIATE,
    Job,
    assemble_job,
    parse_expression,
    parse_job,
    parse_point,
    parse_point_list,
)
from .points import ProjectivePoint, sort_points


def _corr_dict(c):
    return {
        "components": [[g.to_str(), m] for g, m in c.components],
        "d1": c.d1,
        "d2": c.d2,
        "morphism": None if c.morphism is None else {
            "orientation": c.morphism[0],
            "map": c.morphism[1].to_str(),
        },
    }


def _second(job):
    return job.corr2 if job.corr2 is not None else job.corr


def _positive(job, key, default):
    v = job.params.get(key, default)
    if v < 1:
        raise ParseError(f"{key} must be positive")
    return v


def _graph_dot(vertices, edges, name):
    lines = [f"digraph {name} {{"]
    for v in vertices:
        lines.append(f'  "{v}";')
    for e in edges:
        lines.append(
            f'  "{e["source"]}" -> "{e["target"]}" '
            f'[label="{e["e1"]},{e["e2"]}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_graph(job, rng):
    if job.field.kind == "Q":
        raise InfiniteField("the full graph needs a finite base field")
    K = _positive(job, "K", 1)
    E = _ambient_for(job.field, K)
    verts = sort_points(
        [ProjectivePoint.infinity(E)]
        + [ProjectivePoint.finite(E, e) for e in enumerate_elements(E)]
    )
    edges = []
    for x in verts:
        targets, _residual = fiber(job.corr, FORWARD, x, ext_bound=1, rng=rng)
        for y, _mult in targets:
            for _idx, copies, e1, e2 in edge_records(job.corr, x, y):
                edges.append({
                    "source": str(x), "target": str(y),
                    "e1": e1, "e2": e2, "copies": copies,
                })
    result = {
        "ambient": E.spec_string(),
        "vertices": [str(v) for v in verts],
        "edges": edges,
    }
    return result, {"K": K}, _graph_dot(verts, edges, "full_graph")


def _cmd_complete_sets(job, rng):
    seed = parse_point(job.field, job.params["seed"])
    max_ext = _positive(job, "max_ext", 4)
    max_size = _positive(job, "max_size", 512)
    report = complete_set_search(job.corr, seed, max_ext=max_ext,
                                 max_size=max_size, rng=rng)
    result = report_to_json(report)
    result["seed"] = str(seed)
    return result, dict(report.budgets), report_to_dot(report)


def _cmd_classify(job, rng):
    S = parse_point_list(job.field, job.params["S"])
    cls = classify_set(job.corr, S, rng=rng)
    return {
        "vertices": [str(p) for p in sort_points(S)],
        "classification": cls.as_dict(),
    }, {}, None


def _cmd_compose(job, rng):
    return _corr_dict(compose(_second(job), job.corr)), {}, None


def _cmd_transpose(job, rng):
    return _corr_dict(transpose(job.corr)), {}, None


def _cmd_sum(job, rng):
    return _corr_dict(corr_sum(job.corr, _second(job))), {}, None


def _cmd_td_apply(job, rng):
    g = parse_expression(job.params["g"], RATIONAL, job.field)
    return {"result": oper.td_apply(job.corr, g).to_str()}, {}, None


def _cmd_td_matrix(job, rng):
    S = parse_point_list(job.field, job.params["S"])
    n = _positive(job, "n", 1)
    op = oper.td_matrix(job.corr, S, n, rng=rng)
    return op.as_dict(), {"n": n}, None


def _cmd_lin_finitary(job, rng):
    S = parse_point_list(job.field, job.params["S"])
    n = _positive(job, "n", 1)
    buffer = _positive(job, "buffer", 3)
    verdict = oper.lin_finitary_test(job.corr, S, n, buffer=buffer, rng=rng)
    return verdict.as_dict(), {"n_max": n, "buffer": buffer}, None


def _cmd_qtd_check(job, rng):
    Qtext = job.params["Q"].replace("X", "x")
    Q = parse_expression(Qtext, UNIVARIATE, job.field)
    S = parse_point_list(job.field, job.params["S"])
    radius = job.params["radius"]
    if radius < 0:
        raise ParseError("radius must be nonnegative")
    res = oper.qtd_check(job.corr, Q, S, radius, rng=rng)
    return res.as_dict(), {"radius": radius}, None


def _cmd_almost_split(job, rng):
    S = parse_point_list(job.field, job.params["S"])
    S2 = parse_point_list(job.field, job.params["S2"])
    S3 = None
    if "S3" in job.params:
        S3 = parse_point_list(job.field, job.params["S3"])
    n = _positive(job, "n", 1)
    out = oper.almost_split(job.corr, S, S2, n, Spp=S3, rng=rng)
    result = {
        "n_prime": out["n_prime"],
        "dim": out["dim"],
        "basis": [h.to_str() for h in out["basis"]],
        "complement_ok": out["complement_ok"],
        "dim_bound_ok": out["dim_bound_ok"],
    }
    for key in ("second_n_prime", "intersection_dim", "intersection_ok"):
        if key in out:
            result[key] = out[key]
    if "intersection_threshold" in out:
        result["intersection_threshold"] = str(out["intersection_threshold"])
    return result, {"n": n}, None


def _cmd_finitary(job, rng):
    M = _positive(job, "M", 4)
    n = _positive(job, "n", 6)
    max_ext = _positive(job, "max_ext", 3)
    max_size = _positive(job, "max_size", 64)
    verdict = analysis.finitary_verdict(
        job.corr, core_degree=M, max_ext=max_ext, max_size=max_size,
        n_levels=n, rng=rng,
    )
    budgets = {"core_degree": M, "n_levels": n, "max_ext": max_ext,
               "max_size": max_size}
    return verdict.as_dict(), budgets, None


def _cmd_exceptional(job, rng):
    _orient, f = as_morphism(job.corr)
    pts = exceptional_set_morphism(f, job.field, rng=rng)
    return {"points": [str(p) for p in sort_points(pts)]}, {}, None


def _cmd_backward_kernel(job, rng):
    max_ext = _positive(job, "max_ext", 4)
    max_size = _positive(job, "max_size", 512)
    pts = backward_kernel_search(job.corr, max_ext=max_ext,
                                 max_size=max_size, rng=rng)
    return (
        {"points": [str(p) for p in sort_points(pts)]},
        {"max_ext": max_ext, "max_size": max_size},
        None,
    )


def _cmd_bounds(job, rng):
    c = job.corr
    result = {"d1": c.d1, "d2": c.d2, "balanced": c.d1 == c.d2}
    if c.d1 == c.d2:
        result["unbalanced_bound"] = None
    else:
        result["unbalanced_bound"] = str(analysis.unbalanced_bound(c))
    has_g = "genus" in job.params
    has_d = "d" in job.params
    if has_g != has_d:
        raise ParseError("give both genus and d, or neither")
    if has_g:
        pk = analysis.pakovich_bound(job.params["genus"], job.params["d"])
        result["pakovich"] = {
            "bound": str(pk["bound"]),
            "equality_possible": pk["equality_possible"],
            "note": pk["note"],
        }
    return result, {}, None


def _cmd_height(job, rng):
    pt = parse_point(job.field, job.params["seed"])
    h, (a, b) = analysis.naive_height(pt)
    return {"point": str(pt), "log_height": h, "pair": [a, b]}, {}, None


_DISPATCH = {
    "graph": _cmd_graph,
    "complete-sets": _cmd_complete_sets,
    "classify": _cmd_classify,
    "compose": _cmd_compose,
    "transpose": _cmd_transpose,
    "sum": _cmd_sum,
    "td-apply": _cmd_td_apply,
    "td-matrix": _cmd_td_matrix,
    "lin-finitary": _cmd_lin_finitary,
    "qtd-check": _cmd_qtd_check,
    "almost-split": _cmd_almost_split,
    "finitary": _cmd_finitary,
    "exceptional": _cmd_exceptional,
    "backward-kernel": _cmd_backward_kernel,
    "bounds": _cmd_bounds,
    "height": _cmd_height,
}


def run_job(job: Job):
    """Execute a job; returns (document, dot_text_or_None)."""
    rng = random.Random(job.rng_seed)
    result, budgets, dot = _DISPATCH[job.command](job, rng)
    document = {
        "job": job.echo,
        "result": result,
        "budgets": budgets,
        "seed": job.rng_seed,
        "version": job.version,
    }
    return document, dot


def _emit(document, dot, json_path, dot_path):
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    if dot_path:
        if dot is None:
            raise ParseError(
                f"command {document['job']['command']!r} has no graph output"
            )
        with open(dot_path, "w", encoding="utf-8") as fh:
            fh.write(dot)


_QUICK_STR = ("seed", "S", "S2", "S3", "Q", "g")
_QUICK_INT = ("n", "M", "radius", "K", "rng", "max-ext", "max-size",
              "buffer", "genus", "d")


def _quick_job(args):
    corr = {}
    if args.F is not None:
        corr["F"] = args.F
    if args.f is not None:
        corr["f"] = args.f
    if args.F2 is not None:
        corr["F2"] = args.F2
    if args.f2 is not None:
        corr["f2"] = args.f2
    command = {"name": args.cmd}
    for flag in _QUICK_STR:
        v = getattr(args, flag)
        if v is not None:
            command[flag] = v
    for flag in _QUICK_INT:
        v = getattr(args, flag.replace("-", "_"))
        if v is not None:
            command[flag.replace("-", "_")] = v
    sections = {
        "field": {"spec": args.field},
        "corr": corr,
        "command": command,
    }
    return assemble_job(1, sections)


def _build_argparser():
    ap = argparse.ArgumentParser(
        prog="corrdyn",
        description="exact dynamics of self-correspondences on the projective line",
    )
    sub = ap.add_subparsers(dest="mode", required=True)

    runp = sub.add_parser("run", help="execute a job file")
    runp.add_argument("job")
    runp.add_argument("--json", default=None, metavar="OUT")
    runp.add_argument("--dot", default=None, metavar="OUT")

    quick = sub.add_parser("quick", help="one-shot job from flags")
    quick.add_argument("--field", required=True)
    quick.add_argument("--F", default=None)
    quick.add_argument("--f", default=None)
    quick.add_argument("--F2", default=None)
    quick.add_argument("--f2", default=None)
    quick.add_argument("--cmd", required=True)
    for flag in _QUICK_STR:
        quick.add_argument(f"--{flag}", default=None)
    for flag in _QUICK_INT:
        quick.add_argument(f"--{flag}", default=None, type=int)
    quick.add_argument("--json", default=None, metavar="OUT")
    quick.add_argument("--dot", default=None, metavar="OUT")
    return ap


def main(argv=None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        if args.mode == "run":
            with open(args.job, encoding="utf-8") as fh:
                text = fh.read()
            job = parse_job(text)
        else:
            job = _quick_job(args)
        document, dot = run_job(job)
        _emit(document, dot, args.json, args.dot)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CorrdynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
