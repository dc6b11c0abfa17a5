"""Record HTTP exchanges for the explorer's contract tests.

Drives the live service in-process with exactly the request bodies the
browser app issues, checks the qualitative effects the UI tests assert
(flank capture, rule sensitivity, overlap trend), and freezes every
request/response pair to frontend/tests/fixtures/exchanges.json.

Run from the repo root:

    python3 scripts/record_api_fixtures.py
"""

import json
import math
import pathlib
import sys

from fastapi.testclient import TestClient

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from pptree.server import create_app  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parents[1] / "frontend" / "tests" / "fixtures"

RESOLUTION = 61

# Default controls per tab, mirrored in frontend/src/state.ts. The bodies
# recorded here must stay byte-equal (after JSON canonicalization) to the
# ones the app builds, or the fixture backend will report a miss.
TABS = {
    "basic": {"scenario": "basic", "n": 300, "k": 3, "seed": 1,
              "separation": 5, "elongation": 3},
    "outlier": {"scenario": "outlier", "n": 600, "k": 2, "seed": 3,
                "separation": 6, "outlier_fraction": 0.15},
    "mixture": {"scenario": "mixture", "n": 300, "k": 3, "seed": 6,
                "overlap": 0.3},
}

PANELS = (
    {"variant": "axis"},
    {"variant": "original", "rule": 1},
    {"variant": "mod2", "min_node_size": 10, "entropy_threshold": 0.01},
)


def main():
    client = TestClient(create_app())
    exchanges = []

    def post(path, body):
        resp = client.post(path, json=body)
        exchanges.append({
            "method": "POST",
            "path": path,
            "body": body,
            "status": resp.status_code,
            "response": resp.json(),
        })
        assert resp.status_code == 200, (path, body, resp.text)
        return resp.json()

    grids = {}
    fits = {}
    for tab, sim_body in TABS.items():
        sim = post("/simulate", sim_body)
        for panel in PANELS:
            fit = post("/fit", {"dataset_id": sim["dataset_id"], **panel})
            grid = post("/boundary", {"model_id": fit["model_id"],
                                      "resolution": RESOLUTION})
            assert grid["bbox"] == sim["bbox"], (tab, panel["variant"])
            grids[(tab, panel["variant"])] = grid
            fits[(tab, panel["variant"])] = fit
        if tab == "outlier":
            # rule-sensitivity refit the UI test replays on panel 2
            refit = post("/fit", {"dataset_id": sim["dataset_id"],
                                  "variant": "original", "rule": 3})
            post("/boundary", {"model_id": refit["model_id"],
                               "resolution": RESOLUTION})
            c1 = fits[(tab, "original")]["model"]["root"]["c"]
            c3 = refit["model"]["root"]["c"]
            assert c1 != c3, "rule change must move the cutoff"

    # flank capture: the far cluster sits near -sep * (1,1)/sqrt(2);
    # the entropy variant claims that region for class 2, one-cut does not
    sep = TABS["outlier"]["separation"]
    target = -sep / math.sqrt(2.0)
    g2, g1 = grids[("outlier", "mod2")], grids[("outlier", "original")]
    i = min(range(RESOLUTION), key=lambda a: abs(g2["x1"][a] - target))
    j = min(range(RESOLUTION), key=lambda a: abs(g2["x2"][a] - target))
    assert g2["labels"][i * RESOLUTION + j] == 2
    assert g1["labels"][i * RESOLUTION + j] == 1

    # overlap trend: training error rises with the overlap knob on average
    errs = {0.05: [], 0.4: []}
    for seed in range(1, 11):
        for overlap in (0.05, 0.4):
            sim = post("/simulate", {"scenario": "mixture", "n": 240, "k": 3,
                                     "seed": seed, "overlap": overlap})
            fit = post("/fit", {"dataset_id": sim["dataset_id"],
                                "variant": "original", "rule": 1})
            errs[overlap].append(fit["training_error"])
    lo = sum(errs[0.05]) / 10
    hi = sum(errs[0.4]) / 10
    assert hi > lo, (lo, hi)

    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / "exchanges.json"
    path.write_text(json.dumps({"resolution": RESOLUTION,
                                "exchanges": exchanges}, indent=1))
    print(f"{len(exchanges)} exchanges -> {path}")
    print(f"overlap trend: {lo:.4f} (0.05) vs {hi:.4f} (0.4)")


if __name__ == "__main__":
    main()
