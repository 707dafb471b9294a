"""Sweep single-pass budgets and approximation bounds on one model.

For each budget t the script runs a fresh ``inward(t)``; for each bound k a
fresh ``inward_approx(k)``. It reports epsilon, attempts and, for the
k-sweep, attempts relative to (n - 1) k.
"""
import argparse
from dataclasses import dataclass, field

from anytime_inference.datasets import data_path
from anytime_inference.engine import InferenceSession, solve_exact
from anytime_inference.jointree import build
from anytime_inference.metrics import epsilon_measured, epsilon_model
from anytime_inference.modelio import load_model


@dataclass
class SweepConfig:
    model: str = str(data_path("child_standin.net"))
    query: list = field(default_factory=lambda: ["Disease"])
    budgets: tuple = (0, 10, 30, 100, 300, 1000, 3000, 10000)
    bounds: tuple = (1, 2, 4, 8, 16, 32, 64, 128, 256)


def sweep(cfg: SweepConfig):
    model = load_model(cfg.model)
    tree = build(model.factors, cfg.query)
    exact = solve_exact(model.factors, cfg.query)
    n, m, omega = len(model.factors), tree.max_frame(), tree.width()
    print(f"# n={n} m={m} omega={omega} m^omega={m ** omega}")
    print("kind,param,attempts,epsilon,epsilon_model,attempts_per_nk")
    for t in cfg.budgets:
        s = InferenceSession(tree)
        root = s.inward(t)
        print(f"inward,{t},{s.attempts},{float(epsilon_measured(root, exact)):.6f},"
              f"{epsilon_model(s.attempts, m, omega, 1.0, n):.6f},")
    for k in cfg.bounds:
        s = InferenceSession(tree)
        root = s.inward_approx(k)
        print(f"approx,{k},{s.attempts},{float(epsilon_measured(root, exact)):.6f},,"
              f"{s.attempts / ((n - 1) * k):.3f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", default=SweepConfig.model)
    ap.add_argument("--query", default="Disease")
    args = ap.parse_args()
    sweep(SweepConfig(args.model, args.query.split(",")))


if __name__ == "__main__":
    main()
