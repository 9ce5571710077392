"""Command line interface: ``koitertube solve | verify | section``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circular import PSI_VARIANTS
from .config import MODES, load_config
from .errors import KoiterError, ParseError, ValidationError
from .geometry import build_section, section_properties
from .runner import dumps_summary, run_case, verify_table

EXIT_GATE = 1
EXIT_USAGE = 2


def build_parser():
    parser = argparse.ArgumentParser(prog="koitertube", description="Saint-Venant problems for thin elastic tubes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, type=Path, help="TOML run configuration")
        p.add_argument("--grid-s", type=int, dest="grid_s", help="arc-length samples (even, >= 64)")

    solve = sub.add_parser("solve", help="solve, verify and write field tables and summary.json")
    common(solve)
    solve.add_argument("--mode", choices=MODES)
    solve.add_argument("--grid-z", type=int, dest="grid_z", help="z-stations in the field tables (>= 2)")
    solve.add_argument("--out", type=Path, help="output directory")
    solve.add_argument("--psi-variant", choices=PSI_VARIANTS, dest="psi_variant")

    verify = sub.add_parser("verify", help="re-check a saved field table")
    common(verify)
    verify.add_argument("--mode", choices=MODES[:3], default="exact", help="which table to check (default exact)")
    verify.add_argument("--out", type=Path, help="directory holding field_<mode>.<ext>")
    verify.add_argument("--table", type=Path, help="explicit table path (overrides --out and --mode)")

    section = sub.add_parser("section", help="print section properties")
    common(section)
    return parser


def _load(args):
    cfg = load_config(args.config)
    return cfg.with_overrides(
        n_s=args.grid_s,
        n_z=getattr(args, "grid_z", None),
        mode=getattr(args, "mode", None) if args.command == "solve" else None,
        out_dir=str(args.out) if getattr(args, "out", None) is not None else None,
        psi_variant=getattr(args, "psi_variant", None),
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _load(args)
        if args.command == "solve":
            result = run_case(cfg)
            status = result.summary["status"]
            print(f"wrote {Path(cfg.out_dir) / 'summary.json'}; gates {'passed' if status['passed'] else 'FAILED'}")
            for name in status["failures"]:
                print(f"  gate exceeded: {name}", file=sys.stderr)
            return result.status
        if args.command == "verify":
            path = args.table or Path(cfg.out_dir) / f"field_{args.mode}.{cfg.table_format}"
            status, block = verify_table(cfg, path)
            sys.stdout.write(dumps_summary(block))
            return status
        curve = build_section(cfg.section, cfg.n_s)
        sys.stdout.write(dumps_summary({"section": section_properties(curve).as_dict(), "grid_n": cfg.n_s}))
        return 0
    except (ParseError, ValidationError) as exc:
        where = getattr(exc, "field", None) or getattr(exc, "key", None)
        line = getattr(exc, "line", None)
        detail = f" ({where}{', line ' + str(line) if line else ''})" if where or line else ""
        print(f"configuration error{detail}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KoiterError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
