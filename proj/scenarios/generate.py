#!/usr/bin/env python3
"""Writes the bundled scenario configs and their controller weight files.

Every controller is a saturated linear gain u = clamp(K (p* - p)) written as
an exact two-layer ReLU network: relu(z) - relu(-z) = z. Rerun after editing;
outputs are deterministic.
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))


def gain_net(name, gains, targets, state_dim):
    """gains[i] maps control i to (state index, gain); u_i = g * (target_i - x[idx])."""
    n = len(gains)
    w1, b1 = [], []
    for sign in (1.0, -1.0):
        for (idx, g), tgt in zip(gains, targets):
            row = [0.0] * state_dim
            row[idx] = -sign * g
            w1.append(row)
            b1.append(sign * g * tgt)
    w2 = []
    for i in range(n):
        row = [0.0] * (2 * n)
        row[i] = 1.0
        row[n + i] = -1.0
        w2.append(row)
    return {
        "name": name,
        "input_dim": state_dim,
        "output_dim": n,
        "layers": [
            {"weights": w1, "bias": b1, "activation": "relu"},
            {"weights": w2, "bias": [0.0] * n, "activation": "linear"},
        ],
    }


def write(path, obj):
    with open(os.path.join(HERE, path), "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def region(name, lo, hi):
    return {"name": name, "lo": lo, "hi": hi}


# Damped planar double integrator, dt = 0.5, velocity decay 0.5.
DT = 0.5
DAMPED = {
    "A": [[1, 0, DT, 0], [0, 1, 0, DT], [0, 0, 0.5, 0], [0, 0, 0, 0.5]],
    "B": [[0, 0], [0, 0], [0.5, 0], [0, 0.5]],
    "c": [0, 0, 0, 0],
}
KP = 0.3


def planar(name, target, kp=KP):
    return gain_net(name, [(0, kp), (1, kp)], target, 4)


def main():
    os.makedirs(os.path.join(HERE, "controllers"), exist_ok=True)

    # Single integrator: x+ = x + u. One controller per axis.
    write("controllers/fig1a_l1.json", gain_net("l1", [(0, 2.0), (1, 0.0)], [3.5, 0.0], 2))
    write("controllers/fig1a_l2.json", gain_net("l2", [(0, 0.0), (1, 2.0)], [0.0, 3.0], 2))
    write("fig1a.json", {
        "version": 1,
        "formula": "F l2 & (!l2 U l1)",
        "workspace": {"lo": [-1, -1], "hi": [6, 6]},
        "regions": [region("l1", [2.5, -0.5], [4.5, 1.0]), region("l2", [2.5, 1.9], [4.5, 4.0])],
        "initial": {"box": {"lo": [0, 0], "hi": [0.4, 0.4]}},
        "system": {"lti": {"A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]], "c": [0, 0]}},
        "controllers": [
            {"name": "l1", "weights": "controllers/fig1a_l1.json"},
            {"name": "l2", "weights": "controllers/fig1a_l2.json"},
        ],
        "control_bounds": {"lo": [-1, -1], "hi": [1, 1]},
        "reach": {"horizon": 20, "split_depth": 1, "merge": True},
        "seed": 7,
    })

    workspace = {"lo": [0, 0, -5, -5], "hi": [10, 10, 5, 5]}
    initial = {"ellipsoid": {"center": [1, 1, 0, 0], "shape_diag": [0.01, 0.01, 0.0001, 0.0001]}}
    case_regions = [
        region("l1", [0, 6.25], [4, 10]),
        region("l2", [6.25, 0], [10, 3]),
        region("l3", [0, 3.5], [2.4, 4.5]),
        region("l4", [5.5, 7.5], [8, 9.5]),
    ]
    write("controllers/case_l1.json", planar("l1", [2.0, 8.25]))
    write("controllers/case_l2.json", planar("l2", [8.25, 1.5]))
    base = {
        "version": 1,
        "workspace": workspace,
        "label_dims": [0, 1],
        "regions": case_regions,
        "initial": initial,
        "system": {"lti": DAMPED},
        "controllers": [
            {"name": "l1", "weights": "controllers/case_l1.json"},
            {"name": "l2", "weights": "controllers/case_l2.json"},
        ],
        "control_bounds": {"lo": [-1, -1], "hi": [1, 1]},
        "reach": {"horizon": 40, "split_depth": 4, "merge": False},
        "seed": 11,
    }

    write("case1.json", dict(base, formula="F l1 & F l2 & (!(l3 | l4) U l1) & (!(l3 | l4) U l2)"))

    # Weak controller for l1: small gain, too slow to arrive within the horizon.
    write("controllers/case2_l1_weak.json", planar("l1", [2.0, 8.25], kp=0.02))
    case2 = dict(base, formula="F (l1 | l2) & (!(l3 | l4) U (l1 | l2))")
    case2["controllers"] = [
        {"name": "l1", "weights": "controllers/case2_l1_weak.json"},
        {"name": "l2", "weights": "controllers/case_l2.json"},
    ]
    case2["reach"] = {"horizon": 20, "split_depth": 4, "merge": False}
    write("case2.json", case2)

    # l2 is a wall between the start and l1.
    write("controllers/case3_l1.json", planar("l1", [8.25, 1.5]))
    write("controllers/case3_l2.json", planar("l2", [4.5, 1.5]))
    case3 = dict(base, formula="F l2 & (!l2 U l1)")
    case3["regions"] = [region("l1", [6.5, 0], [10, 3]), region("l2", [4, 0], [5, 3])]
    case3["controllers"] = [
        {"name": "l1", "weights": "controllers/case3_l1.json"},
        {"name": "l2", "weights": "controllers/case3_l2.json"},
    ]
    write("case3.json", case3)


if __name__ == "__main__":
    main()
