"""Command line interface: flux sweeps, composition tables, verification.

Subcommands
-----------
sweep       ground-state eigenvalue versus tau for the three potential
            variants (off-off, on-off, on-on), written as CSV
table       ground-state composition grid over tau values and variants
verify      basis pipeline versus the independent grid oracle
basis-dump  orthonormal basis coefficients as JSON

Configuration comes from an INI file (sections geometry, field, basis,
sweep, output) with command line flags taking precedence.  Defaults are
the reference configuration: R = 500, alpha = 1/2, six functions per
parity, nu in [-2, 2].

Exit codes: 0 success, 1 configuration error, 2 verification failure,
3 numerical error.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .basis import BasisSet, DegeneracyError, gram_schmidt_basis
from .field import FieldConfig, energy_scale_mev, tau_from_tesla
from .geometry import DomainError, TorusGeometry
from .hamiltonian import HamiltonianMatrix, assemble
from .oracle import AccuracyError, GridSpec, grid_solve
from .solver import (
    HermiticityError,
    SpectrumResult,
    eigensolve,
    eigensolve_general,
    ground_state_composition,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3

VARIANTS = (("off-off", False, False), ("on-off", True, False), ("on-on", True, True))


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass(frozen=True)
class RunConfig:
    """Full description of a run; serializable to INI and back."""

    major_radius: float = 500.0
    alpha: float = 0.5
    orientation: str = "axial"
    tilt_angle: float = math.pi / 4.0
    tau_start: float = 0.0
    tau_stop: float = 3.0
    tau_step: float = 0.25
    n_even: int = 6
    n_odd: int = 6
    nu_min: int = -2
    nu_max: int = 2
    out_dir: str = "."

    def __post_init__(self) -> None:
        if self.orientation not in ("axial", "in_plane", "tilted"):
            raise ConfigError(f"unknown orientation {self.orientation!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.tau_step <= 0 or self.tau_stop < self.tau_start:
            raise ConfigError(
                f"bad tau sweep [{self.tau_start}, {self.tau_stop}] "
                f"step {self.tau_step}"
            )
        if self.nu_min > self.nu_max:
            raise ConfigError(f"empty nu range [{self.nu_min}, {self.nu_max}]")

    def geometry(self) -> TorusGeometry:
        return TorusGeometry(self.major_radius, self.alpha * self.major_radius)

    def taus(self) -> list[float]:
        n = int(round((self.tau_stop - self.tau_start) / self.tau_step))
        return [self.tau_start + i * self.tau_step for i in range(n + 1)]

    def split_tau(self, tau: float) -> tuple[float, float]:
        """Map sweep magnitude tau to (tau0, tau1) for the orientation.

        tilt_angle is measured from the plane of the torus, so tilted at
        pi/4 gives tau0 = tau1 = tau/sqrt(2).
        """
        if self.orientation == "axial":
            return tau, 0.0
        if self.orientation == "in_plane":
            return 0.0, tau
        return tau * math.sin(self.tilt_angle), tau * math.cos(self.tilt_angle)


def serialize_config(cfg: RunConfig) -> str:
    parser = configparser.ConfigParser()
    parser["geometry"] = {
        "major_radius": repr(cfg.major_radius),
        "alpha": repr(cfg.alpha),
    }
    parser["field"] = {
        "orientation": cfg.orientation,
        "tilt_angle": repr(cfg.tilt_angle),
    }
    parser["basis"] = {
        "n_even": str(cfg.n_even),
        "n_odd": str(cfg.n_odd),
        "nu_min": str(cfg.nu_min),
        "nu_max": str(cfg.nu_max),
    }
    parser["sweep"] = {
        "tau_start": repr(cfg.tau_start),
        "tau_stop": repr(cfg.tau_stop),
        "tau_step": repr(cfg.tau_step),
    }
    parser["output"] = {"out_dir": cfg.out_dir}
    import io

    buf = io.StringIO()
    parser.write(buf)
    return buf.getvalue()


def parse_config(text: str) -> RunConfig:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}") from exc
    kwargs: dict = {}
    plan = {
        "geometry": {"major_radius": float, "alpha": float},
        "field": {"orientation": str, "tilt_angle": float},
        "basis": {"n_even": int, "n_odd": int, "nu_min": int, "nu_max": int},
        "sweep": {"tau_start": float, "tau_stop": float, "tau_step": float},
        "output": {"out_dir": str},
    }
    for section, fields in plan.items():
        if not parser.has_section(section):
            continue
        for key, cast in fields.items():
            if parser.has_option(section, key):
                try:
                    kwargs[key] = cast(parser.get(section, key))
                except ValueError as exc:
                    raise ConfigError(f"bad value for {section}.{key}") from exc
    return RunConfig(**kwargs)


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates: dict = {}
    if getattr(args, "orientation", None):
        updates["orientation"] = args.orientation
    if getattr(args, "tau_max", None) is not None:
        updates["tau_stop"] = args.tau_max
    if getattr(args, "tau_step", None) is not None:
        updates["tau_step"] = args.tau_step
    if getattr(args, "out", None):
        updates["out_dir"] = args.out
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _load_config(args: argparse.Namespace) -> RunConfig:
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        cfg = parse_config(path.read_text())
    else:
        cfg = RunConfig()
    return _apply_overrides(cfg, args)


def _build_basis(cfg: RunConfig) -> BasisSet:
    return gram_schmidt_basis(
        cfg.geometry(),
        n_even=cfg.n_even,
        n_odd=cfg.n_odd,
        nu_range=(cfg.nu_min, cfg.nu_max),
    )


def _solve(h: HamiltonianMatrix) -> SpectrumResult:
    field = h.toggles
    if not field.vmag_on and field.tau1 != 0.0:
        return eigensolve_general(h)
    return eigensolve(h)


def _ground_point(
    cfg: RunConfig, basis: BasisSet, tau: float, vc: bool, vmag: bool
) -> tuple[float, int]:
    t0, t1 = cfg.split_tau(tau)
    h = assemble(
        cfg.geometry(), FieldConfig(t0, t1, vc_on=vc, vmag_on=vmag), basis
    )
    spectrum = _solve(h)
    eps0, _ = spectrum.ground()
    comp = ground_state_composition(spectrum)
    return eps0, comp.dominant_nu()


def cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    basis = _build_basis(cfg)
    scale = energy_scale_mev(cfg.geometry()) if args.mev else None
    lines = ["tau,variant,eps0,eps0_physical,nu_dominant"]
    if scale is not None:
        lines[0] += ",e_mev"
    for tau in cfg.taus():
        for name, vc, vmag in VARIANTS:
            eps0, nu = _ground_point(cfg, basis, tau, vc, vmag)
            row = f"{tau:.12g},{name},{eps0:.12g},{-eps0:.12g},{nu}"
            if scale is not None:
                row += f",{-eps0 * scale:.12g}"
            lines.append(row)
    out = Path(cfg.out_dir) / f"sweep_{cfg.orientation}.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    basis = _build_basis(cfg)
    taus = args.tau if args.tau else [0.0, 1.0, 2.0]
    report: dict = {"orientation": cfg.orientation, "rows": []}
    text_lines = []
    for name, vc, vmag in VARIANTS:
        for tau in taus:
            t0, t1 = cfg.split_tau(tau)
            h = assemble(
                cfg.geometry(), FieldConfig(t0, t1, vc_on=vc, vmag_on=vmag), basis
            )
            spectrum = _solve(h)
            eps0, _ = spectrum.ground()
            comp = ground_state_composition(spectrum)
            report["rows"].append(
                {
                    "variant": name,
                    "tau": tau,
                    "eps0": eps0,
                    "composition": [
                        {"kind": k, "n": n, "m": m, "re": a.real, "im": a.imag}
                        for k, n, m, a in comp.real_combinations()
                    ],
                }
            )
            text_lines.append(
                f"{name:7s} tau={tau:<4g} eps0={eps0:+.6f}  {comp.format_text()}"
            )
    print("\n".join(text_lines))
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(report, indent=2))
        print(f"wrote {args.json_out}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    geom = cfg.geometry()
    basis = _build_basis(cfg)
    grid = GridSpec(args.n_theta, args.n_phi)
    failures = 0
    for orientation in ("axial", "tilted", "in_plane"):
        ocfg = dataclasses.replace(cfg, orientation=orientation)
        for tau in (0.0, 1.0, 2.0):
            t0, t1 = ocfg.split_tau(tau)
            field = FieldConfig(t0, t1, vc_on=True, vmag_on=True)
            spectrum = eigensolve(assemble(geom, field, basis))
            eps_basis, _ = spectrum.ground()
            result = grid_solve(geom, field, grid, k=1, refine=args.refine)
            eps_grid = float(result.eigenvalues[0])
            tol = max(1e-3, 1e-3 * abs(eps_basis))
            ok = abs(eps_basis - eps_grid) <= tol
            failures += not ok
            print(
                f"{'PASS' if ok else 'FAIL'} {orientation:9s} tau={tau:g} "
                f"basis={eps_basis:+.8f} grid={eps_grid:+.8f} "
                f"|diff|={abs(eps_basis - eps_grid):.2e} tol={tol:.2e}"
            )
    if failures:
        print(f"{failures} verification point(s) failed")
        return EXIT_VERIFY
    print("all verification points passed")
    return EXIT_OK


def cmd_basis_dump(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    print(_build_basis(cfg).to_json())
    return EXIT_OK


def cmd_tesla(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    # major_radius is interpreted in angstrom for the conversion
    tau = tau_from_tesla(args.field_tesla, cfg.major_radius * 1e-10)
    print(f"tau = {tau:.6g} for B = {args.field_tesla:g} T at R = "
          f"{cfg.major_radius:g} angstrom (tau = e R^2 B / hbar)")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; we use 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torusmag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="INI config file")
        p.add_argument(
            "--orientation", choices=["axial", "tilted", "in_plane"]
        )
        p.add_argument("--tau-max", type=float, dest="tau_max")
        p.add_argument("--tau-step", type=float, dest="tau_step")
        p.add_argument("--out", help="output directory")

    p_sweep = sub.add_parser("sweep", help="ground eigenvalue vs tau, CSV")
    common(p_sweep)
    p_sweep.add_argument(
        "--mev", action="store_true", help="append a meV energy column"
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_table = sub.add_parser("table", help="ground-state composition grid")
    common(p_table)
    p_table.add_argument("--tau", type=float, action="append")
    p_table.add_argument("--json-out", dest="json_out")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="compare against the grid oracle")
    common(p_verify)
    p_verify.add_argument("--n-theta", type=int, default=64)
    p_verify.add_argument("--n-phi", type=int, default=32)
    p_verify.add_argument("--refine", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_dump = sub.add_parser("basis-dump", help="print basis coefficients")
    common(p_dump)
    p_dump.set_defaults(func=cmd_basis_dump)

    p_tesla = sub.add_parser("tesla", help="convert a field in tesla to tau")
    common(p_tesla)
    p_tesla.add_argument("field_tesla", type=float)
    p_tesla.set_defaults(func=cmd_tesla)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (AccuracyError, HermiticityError, DegeneracyError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
