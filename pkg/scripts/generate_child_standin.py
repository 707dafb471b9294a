"""Regenerate the bundled CHILD-structured stand-in network."""
import argparse

from anytime_inference.datasets import CHILD_SEED, data_path, write_child_standin


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=CHILD_SEED)
    ap.add_argument("--out", default=str(data_path("child_standin.net")))
    args = ap.parse_args()
    write_child_standin(args.out, args.seed)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
