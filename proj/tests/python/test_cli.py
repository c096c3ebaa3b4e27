"""CLI round-trip tests: generate, analyze, augment, color, search, decide,
and run an experiment end to end, checking exit codes and output formats."""

import json
import os
import subprocess
import tempfile

import jsonschema

CLI = os.environ["SPARSELOCAL_CLI"]
SCHEMA = os.environ["SPARSELOCAL_SCHEMA"]


def run(*args, expect=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert proc.returncode == expect, (
        f"{args}: exit {proc.returncode} != {expect}\nstdout: {proc.stdout}\nstderr: {proc.stderr}")
    return proc.stdout


def main():
    with tempfile.TemporaryDirectory() as tmp:
        host = os.path.join(tmp, "host.el")
        out1 = run("gen", "--model", "er", "--n", "60", "--d", "2.0", "--seed", "11", "--out", host)
        out2 = run("gen", "--model", "er", "--n", "60", "--d", "2.0", "--seed", "11")
        with open(host) as fh:
            assert fh.read() == out2, "gen must be deterministic for a fixed seed"
        assert out1 == ""
        header = out2.splitlines()[0].split()
        assert header[0] == "60"

        run("gen", "--model", "ba", "--n", "40", "--d", "2", "--seed", "3", "--out",
            os.path.join(tmp, "ba.el"))

        stats = json.loads(run("analyze", "--in", host, "--r", "1", "--k", "3"))
        assert stats["n"] == 60
        assert stats["cycles"] >= 0
        assert "max_ball_size" in stats and "ball_bound_ok" in stats

        trace = json.loads(run("augment", "--in", host, "--max-steps", "2"))
        assert [rec["step"] for rec in trace] == [1, 2, 3]
        arcs = [rec["arcs"] for rec in trace]
        assert arcs == sorted(arcs), "arc counts grow monotonically"

        star = os.path.join(tmp, "star.el")
        with open(star, "w") as fh:
            fh.write("5 4\n0 1\n0 2\n0 3\n0 4\n")
        pcc = json.loads(run("pcc", "--in", star, "--p", "2"))
        assert pcc["palette_size"] == 2
        assert pcc["steps_used"] == 1

        tri = os.path.join(tmp, "tri.el")
        with open(tri, "w") as fh:
            fh.write("3 3\n0 1\n1 2\n0 2\n")
        k4 = os.path.join(tmp, "k4.el")
        with open(k4, "w") as fh:
            fh.write("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
        found = json.loads(run("find-subgraph", "--in", k4, "--pattern", tri, "--seed", "5"))
        assert found["found"] is True
        emb = found["embedding"]
        assert len(set(emb)) == 3

        scat = json.loads(run("scattered", "--in", host, "--centers",
                              ",".join(str(v) for v in range(60)), "--r", "1", "--s", "2"))
        assert "found" in scat

        # the pattern path inside the sentence resolves against the sentence's directory
        sentence = os.path.join(tmp, "sentence.json")
        with open(sentence, "w") as fh:
            json.dump({"s": 1, "r": 1,
                       "pred": {"type": "contains_pattern", "pattern": "tri.el", "radius": 1}}, fh)
        verdict = json.loads(run("check-sentence", "--in", k4, "--sentence", sentence))
        assert verdict["holds"] is True

        base = os.path.join(tmp, "rep")
        run("experiment", "--kind", "cycles", "--n", "100", "--trials", "5", "--seed", "7",
            "--out", base)
        with open(base + ".json") as fh:
            doc = json.load(fh)
        jsonschema.validate(doc, json.load(open(SCHEMA)))
        assert len(doc["rows"]) == 5
        with open(base + ".csv") as fh:
            lines = fh.read().splitlines()
        assert lines[0] == "kind,n,d,r,k,m,p,q,s,step,trial,seed_index,statistic,value"
        assert len(lines) == 6

        # exit codes: usage errors are 2, domain errors are 1
        run("--version")
        run("analyze", "--in", os.path.join(tmp, "missing.el"), expect=1)
        run("gen", "--model", "er", "--n", "10", expect=2)  # --d missing
        run("bogus-subcommand", expect=2)

    print("cli round-trip tests passed")


if __name__ == "__main__":
    main()
