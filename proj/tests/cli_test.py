"""End-to-end checks of the command-line tool: exit codes, error JSON,
recomputing every reported expansion from the input graph, determinism."""

import json
import os
import subprocess
import sys
import tempfile

EXE = sys.argv[1]
failures = []


def run(*args):
    p = subprocess.run([EXE, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    if not cond:
        failures.append(what)
        print("FAIL:", what)


def expansion(edges, s):
    s = set(s)
    cut = vol = 0.0
    for u, v, w in edges:
        if u in s:
            vol += w
        if v in s:
            vol += w
        if (u in s) != (v in s):
            cut += w
    return cut / vol


def without_time(doc):
    doc = dict(doc)
    doc.pop("wall_time_seconds", None)
    return doc


with tempfile.TemporaryDirectory() as tmp:
    # Two weighted triangles joined by a light edge, plus a tail.
    edges = [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.5),
             (3, 5, 1.0), (2, 3, 0.1), (5, 6, 1.0), (6, 7, 1.0)]
    path = os.path.join(tmp, "g.txt")
    with open(path, "w") as f:
        f.write("# test graph\n")
        for u, v, w in edges:
            f.write(f"{u} {v} {w}\n")

    for algo in ("cuts", "partition", "functions"):
        code, out, err = run("--input", path, "--k", "2", "--algorithm", algo, "--seed", "3")
        check(code == 0, f"{algo}: exit {code} {err}")
        if code != 0:
            continue
        doc = json.loads(out)
        check(doc["version"] == 1, f"{algo}: version")
        check(doc["seed"] == 3, f"{algo}: seed recorded")
        check(len(doc["eigenvalues"]) >= 2, f"{algo}: eigenvalues")
        for s in doc["sets"]:
            phi = expansion(edges, s["vertices"])
            check(abs(phi - s["expansion"]) <= 1e-12, f"{algo}: phi recomputed {phi} vs {s['expansion']}")
        if doc["sets"]:
            check(abs(doc["max_expansion"] - max(s["expansion"] for s in doc["sets"])) <= 1e-15,
                  f"{algo}: max expansion")
        if algo == "partition":
            covered = sorted(v for s in doc["sets"] for v in s["vertices"])
            check(covered == list(range(8)), "partition covers V")

    a = run("--input", path, "--k", "2", "--seed", "9")[1]
    b = run("--input", path, "--k", "2", "--seed", "9")[1]
    check(without_time(json.loads(a)) == without_time(json.loads(b)), "determinism")
    check(json.dumps(without_time(json.loads(a)), sort_keys=True)
          == json.dumps(without_time(json.loads(b)), sort_keys=True), "byte identity")

    code, _, err = run("--input", os.path.join(tmp, "missing.txt"), "--k", "2")
    check(code == 2, f"missing input exit {code}")
    try:
        check(json.loads(err)["error"]["kind"] == "InputNotFound", "InputNotFound kind")
    except (ValueError, KeyError):
        check(False, f"error json: {err!r}")

    code, _, err = run("--family", "path", "--n", "10", "--k", "2", "--delta", "3")
    check(code == 2, f"bad delta exit {code}")
    code, _, err = run("--family", "nonsense", "--k", "2")
    check(code == 2, f"bad family exit {code}")
    code, _, err = run("--input", path, "--family", "path", "--n", "5")
    check(code == 2, f"two sources exit {code}")
    code, _, err = run("--k", "2")
    check(code == 2, f"no source exit {code}")

    code, out, err = run("--family", "clique-union", "--clusters", "3", "--size", "10",
                         "--bridge", "0.01", "--k", "3", "--algorithm", "partition")
    check(code == 0, f"clique-union exit {code} {err}")
    if code == 0:
        doc = json.loads(out)
        check(len(doc["sets"]) == 3, "clique-union three sets")

    code, out, err = run("--family", "noisy-hypercube", "--dim", "8", "--eps", "auto",
                         "--k", "8", "--algorithm", "cuts", "--trials", "2")
    check(code == 0, f"hypercube exit {code} {err}")
    if code == 0:
        check(json.loads(out)["hypercube"]["lambda_k_le_two_eps"] is True, "hypercube lambda_k <= 2 eps")

    labels = os.path.join(tmp, "labels.txt")
    with open(labels, "w") as f:
        f.write("\n".join(f"v{i}" for i in range(8)) + "\n")
    csv = os.path.join(tmp, "trials.csv")
    outp = os.path.join(tmp, "out.json")
    code, _, err = run("--input", path, "--k", "2", "--labels", labels, "--emit-csv", csv,
                       "--output", outp)
    check(code == 0, f"labels exit {code} {err}")
    if code == 0:
        doc = json.load(open(outp))
        check(all(s["labels"] == [f"v{v}" for v in s["vertices"]] for s in doc["sets"]), "labels")
        check(open(csv).readline().startswith("trial,seed"), "csv header")

print("cli:", "ok" if not failures else f"{len(failures)} failures")
sys.exit(1 if failures else 0)
