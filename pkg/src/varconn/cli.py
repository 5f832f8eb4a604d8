"""Command-line interface.

Subcommands: simulate, fit, measure, mir, verify. Exit status 0 on
success, 2 for configuration/parse problems, 3 for numerical refusals and
failures, 4 when verification finds a broken identity. Error lines on
stderr start with a stable E_* code.
"""

import argparse
import sys

from .errors import (
    DataError,
    DimensionError,
    DomainError,
    EstimationError,
    NumericalError,
    ParseError,
)
from .fileio import (
    build_result_document,
    canonical_json,
    load_model,
    load_timeseries,
    save_model,
    save_result,
    save_timeseries,
)
from .infotheory import MirKind, mir_coherence, mir_idtf, mir_ipdc
from .measures import (
    MeasureKind,
    coherence,
    dtf_family,
    idtf,
    ipdc,
    pdc_family,
)
from .oracles import run_verification
from .spectral import FrequencyGrid, evaluate_spectra, partialize
from .var_model import estimate, select_order, simulate, validate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_VERIFY = 4


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        return _fail("E_PARSE", exc, EXIT_CONFIG)
    except DataError as exc:
        return _fail("E_DATA", exc, EXIT_CONFIG)
    except (DomainError, DimensionError) as exc:
        return _fail("E_CONFIG", exc, EXIT_CONFIG)
    except (NumericalError, EstimationError) as exc:
        return _fail("E_NUMERIC", exc, EXIT_NUMERIC)
    except OSError as exc:
        return _fail("E_IO", exc, EXIT_CONFIG)


def _fail(code: str, exc: Exception, status: int) -> int:
    print(f"{code}: {exc}", file=sys.stderr)
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varconn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="draw a realization of a model")
    p_sim.add_argument("--model", required=True, help="model document (JSON)")
    p_sim.add_argument("--n", type=int, required=True, help="samples to keep")
    p_sim.add_argument("--burn-in", type=int, default=1000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", required=True, help="output CSV")
    p_sim.add_argument("--innovations-out", help="also write the innovation draws")
    p_sim.set_defaults(handler=_cmd_simulate)

    p_fit = sub.add_parser("fit", help="estimate a model from CSV data")
    p_fit.add_argument("--data", required=True, help="input CSV")
    p_fit.add_argument("--layout", default="rows_are_samples", help="rows_are_samples or rows_are_channels")
    group = p_fit.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", type=int, help="fixed lag order")
    group.add_argument("--max-order", type=int, help="select the order in 1..max by criterion")
    p_fit.add_argument("--criterion", default="bic", choices=("aic", "bic"))
    p_fit.add_argument("--name", help="metadata name for the fitted model")
    p_fit.add_argument("--out", required=True, help="output model document")
    p_fit.set_defaults(handler=_cmd_fit)

    p_measure = sub.add_parser("measure", help="evaluate connectivity measures")
    p_measure.add_argument("--model", required=True)
    p_measure.add_argument("--measures", default="coh,pdc,gpdc,ipdc,dtf,dc,idtf", help="comma-separated list")
    p_measure.add_argument("--nfreq", type=int, default=512)
    p_measure.add_argument("--mag-sq", action="store_true", help="include squared magnitudes")
    p_measure.add_argument("--fs", type=float, help="sample rate to annotate frequencies in Hz")
    p_measure.add_argument("--out", help="output JSON (stdout if omitted)")
    p_measure.set_defaults(handler=_cmd_measure)

    p_mir = sub.add_parser("mir", help="integrate measures into information rates")
    p_mir.add_argument("--model", required=True)
    p_mir.add_argument("--kinds", default="ipdc,idtf", help="comma-separated: ipdc, idtf, coh")
    p_mir.add_argument("--nfreq", type=int, default=512)
    p_mir.add_argument("--units", default="nats", choices=("nats", "bits"))
    p_mir.add_argument("--out", help="output JSON (stdout if omitted)")
    p_mir.set_defaults(handler=_cmd_mir)

    p_verify = sub.add_parser("verify", help="run the self-verification suite")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--models", type=int, default=50)
    p_verify.add_argument("--nfreq", type=int, default=128)
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def _cmd_simulate(args) -> int:
    model = load_model(args.model)
    samples, innovations = simulate(model, args.n, burn_in=args.burn_in, seed=args.seed)
    out = save_timeseries(samples, args.out)
    print(f"wrote {out} ({samples.n_samples} samples x {samples.K} channels)")
    if args.innovations_out:
        extra = save_timeseries(innovations, args.innovations_out)
        print(f"wrote {extra}")
    return EXIT_OK


def _cmd_fit(args) -> int:
    data = load_timeseries(args.data, layout=args.layout)
    if args.order is not None:
        order = args.order
    else:
        order = select_order(data, args.max_order, criterion=args.criterion)
        print(f"selected order {order} by {args.criterion}")
    model = estimate(data, order)
    report = validate(model)
    out = save_model(model, args.out, name=args.name)
    print(f"wrote {out} (K={model.K}, p={model.p}, spectral radius {report.spectral_radius:.4f})")
    if not report.stable:
        print("warning: fitted model is unstable; spectra and measures will be refused", file=sys.stderr)
    return EXIT_OK


def _parse_kinds(text: str, allowed: tuple[str, ...], what: str) -> list[str]:
    kinds = [item.strip().lower() for item in text.split(",") if item.strip()]
    if not kinds:
        raise DomainError(f"no {what} requested")
    for kind in kinds:
        if kind not in allowed:
            raise DomainError(f"unknown {what} {kind!r}, expected one of {', '.join(allowed)}")
    return kinds


def _cmd_measure(args) -> int:
    model = load_model(args.model)
    kinds = _parse_kinds(args.measures, tuple(k.value for k in MeasureKind), "measure")
    report = validate(model)
    if not report.stable:
        raise NumericalError(
            f"model is unstable (spectral radius {report.spectral_radius:.6g}); measures are undefined"
        )
    grid = FrequencyGrid.default(args.nfreq)
    spectra = evaluate_spectra(model, grid)
    partial = partialize(spectra, model) if MeasureKind.IDTF.value in kinds else None
    results = {}
    for kind in kinds:
        measure = MeasureKind(kind)
        if measure is MeasureKind.COHERENCE:
            results[kind] = coherence(spectra)
        elif measure in (MeasureKind.PDC, MeasureKind.GPDC):
            results[kind] = pdc_family(spectra, model, measure)
        elif measure is MeasureKind.IPDC:
            results[kind] = ipdc(spectra, model)
        elif measure in (MeasureKind.DTF, MeasureKind.DC):
            results[kind] = dtf_family(spectra, model, measure)
        else:
            results[kind] = idtf(spectra, partial)
    document = build_result_document(
        grid, measures=results, include_mag_sq=args.mag_sq, sample_rate_hz=args.fs
    )
    return _emit(document, args.out)


def _cmd_mir(args) -> int:
    model = load_model(args.model)
    kinds = _parse_kinds(args.kinds, tuple(k.value for k in MirKind), "rate kind")
    report = validate(model)
    if not report.stable:
        raise NumericalError(
            f"model is unstable (spectral radius {report.spectral_radius:.6g}); rates are undefined"
        )
    grid = FrequencyGrid.default(args.nfreq)
    builders = {
        MirKind.IPDC.value: mir_ipdc,
        MirKind.IDTF.value: mir_idtf,
        MirKind.COHERENCE.value: mir_coherence,
    }
    mirs = {kind: builders[kind](model, grid) for kind in kinds}
    units = "nats_per_sample" if args.units == "nats" else "bits_per_sample"
    document = build_result_document(grid, mirs=mirs, units=units)
    return _emit(document, args.out)


def _cmd_verify(args) -> int:
    report = run_verification(seed=args.seed, n_models=args.models, n_freq=args.nfreq)
    for line in report.lines():
        print(line)
    if report.passed:
        print("verification passed")
        return EXIT_OK
    print("E_VERIFY: at least one identity check failed", file=sys.stderr)
    return EXIT_VERIFY


def _emit(document: dict, out: str | None) -> int:
    if out is None:
        sys.stdout.write(canonical_json(document))
    else:
        path = save_result(document, out)
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
