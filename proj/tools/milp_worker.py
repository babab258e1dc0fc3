#!/usr/bin/env python3
"""MILP worker for the external solver backend.

Reads one JSON model per line on stdin, solves it with scipy.optimize.milp
(HiGHS) and writes one JSON reply per line on stdout.
"""
import json
import sys
import warnings

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import csr_matrix

# HiGHS option names unknown to scipy are forwarded verbatim with a warning.
warnings.filterwarnings("ignore", message="Unrecognized options")


def _bounds(values, fill):
    return np.array([fill if v is None else float(v) for v in values], dtype=float)


def solve(req):
    n = len(req["c"])
    c = np.asarray(req["c"], dtype=float)
    lo = _bounds(req["lo"], -np.inf)
    hi = _bounds(req["hi"], np.inf)
    integrality = np.asarray(req["integer"], dtype=int)

    rows = req["rows"]
    constraints = []
    if rows:
        data, indices, indptr = [], [], [0]
        rlo, rhi = [], []
        for r in rows:
            indices.extend(r["idx"])
            data.extend(r["val"])
            indptr.append(len(indices))
            rlo.append(-np.inf if r["lo"] is None else r["lo"])
            rhi.append(np.inf if r["hi"] is None else r["hi"])
        a = csr_matrix((data, indices, indptr), shape=(len(rows), n))
        constraints.append(LinearConstraint(a, rlo, rhi))

    opts = req.get("options", {})
    options = {
        "mip_rel_gap": float(opts.get("relative_gap", 1e-6)),
        "primal_feasibility_tolerance": float(opts.get("feasibility_tol", 1e-7)),
        "time_limit": float(opts.get("time_limit_s", 3600.0)),
        "node_limit": int(opts.get("node_limit", 10**9)),
        "disp": False,
    }
    try:
        res = milp(c, constraints=constraints, integrality=integrality,
                   bounds=Bounds(lo, hi), options=options)
    except TypeError:
        options.pop("primal_feasibility_tolerance", None)
        res = milp(c, constraints=constraints, integrality=integrality,
                   bounds=Bounds(lo, hi), options=options)

    status = {0: "optimal", 1: "limit", 2: "infeasible", 3: "unbounded"}.get(res.status, "limit")
    reply = {"status": status, "message": str(res.message)}
    if res.x is not None:
        reply["x"] = [float(v) for v in res.x]
        bound = getattr(res, "mip_dual_bound", None)
        if bound is not None and np.isfinite(bound):
            reply["bound"] = float(bound) + float(req.get("c0", 0.0))
        nodes = getattr(res, "mip_node_count", None)
        if nodes is not None:
            reply["nodes"] = int(nodes)
    return reply


def main():
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            reply = solve(json.loads(line))
        except Exception as exc:  # reply instead of dying mid-protocol
            reply = {"status": "limit", "message": "worker error: %s" % exc}
        sys.stdout.write(json.dumps(reply) + "\n")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
