"""
Command-line interface for the constellation designer.

Subcommands:
    optimize         Design constellations over an SNR grid and store them
    bound-curve      Analytical BER bound over an SNR grid
    sim-curve        Monte-Carlo BER over an SNR grid
    se-curve         Spectral efficiency per MCS with the adaptive envelope
    latency          Required SNR versus Viterbi traceback window
    verify-fixtures  Check the bundled published constellations

Data go to --out files (each with a <out>.manifest.json); logs go to stderr.

Example:
    $ constellation-designer optimize --m 2 --snr 12:18:6 --mcs 1 --store lut.json
    $ constellation-designer se-curve --m 2 --snr 5:25:1 --source adaptive --out se.csv
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from constellation_designer.adapt.design import design_lut
from constellation_designer.adapt.latency import latency_sweep
from constellation_designer.adapt.mcs import MCS_CATALOG, get_mcs, get_mcs_list
from constellation_designer.adapt.selection import constellation_for, se_curve
from constellation_designer.adapt.spectral import PRINTED_FORM_NOTE, spectral_efficiency
from constellation_designer.bound.transfer import evaluate_bound
from constellation_designer.channel.link import trellis_for_mcs
from constellation_designer.channel.simulate import simulate_ber
from constellation_designer.config import settings, validate_settings
from constellation_designer.core.errors import (
    ConfigurationError,
    ConstellationDesignError,
    FixtureError,
    LutFormatError,
    LutKeyError,
    NumericalFailureError,
)
from constellation_designer.core.models import (
    AWGN,
    ChannelContext,
    DecoderConfig,
    PsoConfig,
    StopRule,
)
from constellation_designer.services.lut_store import (
    LutStoreInterface,
    get_fixture_store,
    get_lut_store,
)
from constellation_designer.utils.manifest import build_manifest, write_manifest
from constellation_designer.utils.output import (
    BOUND_COLUMNS,
    ENVELOPE_LABEL,
    LATENCY_COLUMNS,
    SE_COLUMNS,
    SIM_COLUMNS,
    write_rows,
)
from constellation_designer.utils.validation import (
    default_design_grid,
    parse_snr_grid,
    verify_fixtures,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_CONFIG = 2
EXIT_FIXTURE = 3
EXIT_NUMERICAL = 4


def fading_parameter(text: str):
    """argparse type for --m: a positive integer or 'awgn'."""
    if text.lower() in {AWGN, "inf", "infinity"}:
        return AWGN
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--m must be a positive integer or 'awgn', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"--m must be at least 1, got {value}")
    return value


def int_list(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def float_list(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _resolve_store(args, default_to_fixture: bool) -> LutStoreInterface:
    if args.store is not None:
        return get_lut_store(args.store)
    return get_fixture_store() if default_to_fixture else get_lut_store()


def _convention_warnings(store: Optional[LutStoreInterface]) -> List[str]:
    if store is None:
        return []
    divisor = store.distance_divisor()
    if divisor is None or divisor == settings.CHERNOFF_DISTANCE_DIVISOR:
        return []
    message = (
        f"LUT designs were made with Chernoff distance divisor {divisor:g}; "
        f"bounds here use {settings.CHERNOFF_DISTANCE_DIVISOR:g}"
    )
    logger.warning(message)
    return [message]


def _stop_rule(args) -> StopRule:
    return StopRule(
        min_errors=settings.MIN_BIT_ERRORS if args.min_errors is None else args.min_errors,
        max_frames=settings.MAX_FRAMES if args.max_frames is None else args.max_frames,
    )


def _config_of(args) -> dict:
    return {
        key: (str(value) if isinstance(value, Path) else value)
        for key, value in sorted(vars(args).items())
        if key != "handler"
    }


def _store_inputs(args) -> list:
    store = args.store if getattr(args, "store", None) is not None else settings.fixture_store_path
    return [store]


def cmd_optimize(args) -> int:
    """Design one constellation per grid SNR and store the records."""
    mcs = get_mcs(args.mcs)
    grid = parse_snr_grid(args.snr) if args.snr is not None else default_design_grid()
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    overrides = {
        key: value
        for key, value in (
            ("swarm_size", args.swarm_size),
            ("iterations", args.iterations),
            ("c1", args.c1),
            ("c2", args.c2),
        )
        if value is not None
    }
    if args.standard_pso:
        overrides["greedy_acceptance"] = False
    cfg = PsoConfig(seed=seed, **overrides)
    store_path = Path(args.store) if args.store is not None else settings.LUT_STORE_PATH
    store = get_lut_store(store_path)

    report = design_lut(args.m, grid, mcs, cfg, store, workers=args.workers)
    for point in report.points:
        print(
            f"m={args.m} snr_db={point.snr_db!r} mcs={mcs.id} bound={point.record.bound!r} "
            f"conventional={point.conventional_bound!r} gain_db={point.gain_db!r}"
        )

    config = _config_of(args)
    config["snr_grid_db"] = grid
    config["pso"] = cfg.model_dump()
    write_manifest(
        build_manifest("optimize", config, seed=seed, warnings=report.warnings),
        store_path,
    )
    return EXIT_OK


def cmd_bound_curve(args) -> int:
    """Bound on an SNR grid; divergent points are written with pb=inf and flagged."""
    mcs = get_mcs(args.mcs)
    trellis = trellis_for_mcs(mcs)
    store = _resolve_store(args, default_to_fixture=True) if args.source == "adaptive" else None
    n_b = args.nb

    rows = []
    warnings = _convention_warnings(store)
    for snr_db in parse_snr_grid(args.snr):
        ctx = ChannelContext.from_snr_db(m=args.m, snr_db=snr_db)
        constellation = constellation_for(mcs, args.m, snr_db, args.source, store)
        result = evaluate_bound(trellis, constellation, ctx)
        if result.divergent:
            message = f"bound diverges at {snr_db} dB (spectral radius {result.spectral_radius:.6f})"
            logger.warning(message)
            warnings.append(message)
        pb_for_se = min(result.p_b_bound, 1.0)
        se = spectral_efficiency(pb_for_se, mcs.modulation_order, mcs.rate, n_b)
        rows.append(
            [snr_db, mcs.id, "bound", result.p_b_bound, se, result.spectral_radius, result.divergent]
        )

    write_rows(args.out, BOUND_COLUMNS, rows)
    write_manifest(
        build_manifest("bound-curve", _config_of(args), inputs=_store_inputs(args), warnings=warnings),
        args.out,
    )
    print(args.out)
    return EXIT_OK


def cmd_sim_curve(args) -> int:
    """Monte-Carlo BER on an SNR grid."""
    mcs = get_mcs(args.mcs)
    store = _resolve_store(args, default_to_fixture=True) if args.source == "adaptive" else None
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    stop = _stop_rule(args)
    decoder = DecoderConfig() if args.tau is None else DecoderConfig(traceback_window=args.tau)

    rows = []
    for snr_db in parse_snr_grid(args.snr):
        ctx = ChannelContext.from_snr_db(m=args.m, snr_db=snr_db)
        constellation = constellation_for(mcs, args.m, snr_db, args.source, store)
        estimate = simulate_ber(
            mcs, constellation, ctx,
            n_b=args.nb, stop=stop, seed=seed, decoder=decoder, workers=args.workers,
        )
        se = spectral_efficiency(estimate.ber, mcs.modulation_order, mcs.rate, args.nb)
        rows.append([
            snr_db, mcs.id, "sim", estimate.ber, se,
            estimate.std_error, estimate.bit_errors, estimate.bits_simulated, estimate.frames,
        ])

    write_rows(args.out, SIM_COLUMNS, rows)
    write_manifest(
        build_manifest("sim-curve", _config_of(args), seed=seed, inputs=_store_inputs(args)),
        args.out,
    )
    print(args.out)
    return EXIT_OK


def cmd_se_curve(args) -> int:
    """Per-MCS spectral efficiency and the envelope over the selected schemes."""
    schemes = get_mcs_list(args.mcs)
    store = None
    if args.source == "adaptive":
        store = _resolve_store(args, default_to_fixture=True)
        if not store.records(m=args.m):
            raise LutKeyError(f"no LUT records for m={args.m}; adaptive SE curves need a designed store")
    warnings = [PRINTED_FORM_NOTE] + _convention_warnings(store)
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed

    curve = se_curve(
        args.m,
        parse_snr_grid(args.snr),
        schemes,
        args.source,
        store=store,
        n_b=args.nb,
        pb_source=args.pb_source,
        stop=_stop_rule(args),
        seed=seed,
    )
    rows = []
    for row in curve:
        for scheme in schemes:
            point = row.points[scheme.id]
            rows.append([point.snr_db, point.mcs, point.pb_source, point.pb, point.se])
        best = row.points[row.envelope_mcs]
        rows.append([row.snr_db, ENVELOPE_LABEL, best.pb_source, best.pb, best.se])

    write_rows(args.out, SE_COLUMNS, rows)
    write_manifest(
        build_manifest(
            "se-curve", _config_of(args), seed=seed, inputs=_store_inputs(args),
            warnings=warnings,
        ),
        args.out,
    )
    print(args.out)
    return EXIT_OK


def cmd_latency(args) -> int:
    """Required SNR per (traceback window, target BER); unattained cells still exit 0."""
    mcs = get_mcs(args.mcs)
    store = _resolve_store(args, default_to_fixture=True) if args.source == "adaptive" else None
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed

    cells = latency_sweep(
        mcs,
        args.source,
        args.m,
        targets=args.target_ber,
        taus=args.tau,
        store=store,
        n_b=args.nb,
        stop=_stop_rule(args),
        seed=seed,
        snr_min_db=args.snr_min,
        snr_max_db=args.snr_max,
        resolution_db=args.resolution,
        workers=args.workers,
    )
    rows = [
        [c.tau, c.tau_bits, c.target_ber, c.required_snr_db, c.attained]
        for c in cells
    ]
    write_rows(args.out, LATENCY_COLUMNS, rows)
    warnings = [
        f"tau={c.tau}, target {c.target_ber!r} not attained" for c in cells if not c.attained
    ]
    write_manifest(
        build_manifest("latency", _config_of(args), seed=seed, inputs=_store_inputs(args), warnings=warnings),
        args.out,
    )
    print(args.out)
    return EXIT_OK


def cmd_verify_fixtures(args) -> int:
    """Verify the published constellations; raises FixtureError on any failure."""
    store = get_lut_store(args.store) if args.store is not None else get_fixture_store()
    report = verify_fixtures(store)
    for note in report.notes:
        print(f"note: {note}")
    for error in report.errors:
        print(f"FAIL: {error}")
    if not report.ok:
        raise FixtureError(f"{len(report.errors)} fixture check(s) failed")
    print(f"ok: {report.checked} constellation(s) verified")
    return EXIT_OK


def _add_channel_args(parser: argparse.ArgumentParser, grid: bool = True) -> None:
    parser.add_argument("--m", type=fading_parameter, required=True, help="Nakagami m (integer) or 'awgn'")
    if grid:
        parser.add_argument("--snr", required=True, help="SNR grid in dB: start:end:step or a,b,c")


def _add_sim_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Frame seed")
    parser.add_argument("--min-errors", type=int, default=None, help="Stop after this many bit errors")
    parser.add_argument("--max-frames", type=int, default=None, help="Stop after this many frames")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="constellation-designer",
        description="SNR-adaptive irregular constellation design for convolutionally coded links.",
    )
    parser.add_argument("--log-level", default=None, help="Override settings.LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)
    mcs_ids = sorted(MCS_CATALOG)

    p = sub.add_parser("optimize", help="design and store constellations")
    _add_channel_args(p, grid=False)
    p.add_argument(
        "--snr", default=None,
        help="SNR grid in dB: start:end:step or a,b,c (settings.LUT_SNR_MIN_DB to LUT_SNR_MAX_DB)",
    )
    p.add_argument("--mcs", type=int, required=True, choices=mcs_ids)
    p.add_argument("--store", default=None, help="LUT store path (settings.LUT_STORE_PATH)")
    p.add_argument("--seed", type=int, default=None, help="Swarm seed")
    p.add_argument("--swarm-size", type=int, default=None)
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("--standard-pso", action="store_true", help="Always move particles (no greedy acceptance)")
    p.add_argument("--workers", type=int, default=None, help="Fitness-evaluation processes")
    p.set_defaults(handler=cmd_optimize)

    for name, handler, help_text in (
        ("bound-curve", cmd_bound_curve, "analytical BER bound curve"),
        ("sim-curve", cmd_sim_curve, "simulated BER curve"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_channel_args(p)
        p.add_argument("--mcs", type=int, required=True, choices=mcs_ids)
        p.add_argument("--source", choices=["adaptive", "conventional"], default="conventional")
        p.add_argument("--store", default=None, help="LUT store for adaptive mode (bundled fixtures)")
        p.add_argument("--nb", type=int, default=settings.DEFAULT_FRAME_BITS, help="Frame size N_b")
        p.add_argument("--out", required=True, help="Output CSV path")
        if name == "sim-curve":
            _add_sim_args(p)
            p.add_argument("--tau", type=int, default=None, help="Traceback window (settings.DEFAULT_TRACEBACK)")
        p.set_defaults(handler=handler)

    p = sub.add_parser("se-curve", help="spectral efficiency per MCS with the envelope")
    _add_channel_args(p)
    p.add_argument("--mcs", type=int_list, default=mcs_ids, help="Comma-separated MCS ids")
    p.add_argument("--source", choices=["adaptive", "conventional"], default="adaptive")
    p.add_argument("--pb-source", choices=["bound", "sim"], default="bound")
    p.add_argument("--store", default=None, help="LUT store for adaptive mode (bundled fixtures)")
    p.add_argument("--nb", type=int, default=settings.DEFAULT_FRAME_BITS, help="Frame size N_b")
    p.add_argument("--out", required=True, help="Output CSV path")
    _add_sim_args(p)
    p.set_defaults(handler=cmd_se_curve)

    p = sub.add_parser("latency", help="required SNR versus traceback window")
    _add_channel_args(p, grid=False)
    p.add_argument("--mcs", type=int, required=True, choices=mcs_ids)
    p.add_argument("--source", choices=["adaptive", "conventional"], default="conventional")
    p.add_argument("--store", default=None, help="LUT store for adaptive mode (bundled fixtures)")
    p.add_argument("--tau", type=int_list, required=True, help="Comma-separated windows in trellis steps")
    p.add_argument("--target-ber", type=float_list, required=True, help="Comma-separated target BERs")
    p.add_argument("--nb", type=int, default=settings.DEFAULT_FRAME_BITS, help="Frame size N_b")
    p.add_argument("--snr-min", type=float, default=None)
    p.add_argument("--snr-max", type=float, default=None)
    p.add_argument("--resolution", type=float, default=None, help="Bisection resolution in dB")
    p.add_argument("--out", required=True, help="Output CSV path")
    _add_sim_args(p)
    p.set_defaults(handler=cmd_latency)

    p = sub.add_parser("verify-fixtures", help="check the bundled published constellations")
    p.add_argument("--store", default=None, help="Store to verify instead of the bundled one")
    p.set_defaults(handler=cmd_verify_fixtures)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the CLI; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=(args.log_level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        validate_settings()
    except ValueError as e:
        logger.error(f"Invalid settings: {e}")
        return EXIT_CONFIG

    try:
        return args.handler(args)
    except FixtureError as e:
        logger.error(f"{e.error_code}: {e}")
        return EXIT_FIXTURE
    except (ConfigurationError, LutKeyError, LutFormatError, ValidationError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except NumericalFailureError as e:
        logger.error(f"{e.error_code}: {e}", exc_info=True)
        return EXIT_NUMERICAL
    except ConstellationDesignError as e:
        logger.error(f"{e.error_code}: {e}", exc_info=True)
        return EXIT_OTHER
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
