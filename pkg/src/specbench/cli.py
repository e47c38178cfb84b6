"""Command-line pipeline: gen-data, split, train, train-dual, achem, eval, predict, serve.

Exit codes: 0 success, 1 domain error, 2 usage error. Every randomized stage
takes a --seed so any run can be reproduced from its flags alone.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import data as data_mod
from . import reactor as reactor_mod
from . import service as service_mod
from . import spectral
from .data import NormalizationParams, SampleSet
from .metrics import evaluate_model
from .modelio import CONC_COLUMNS, DUAL, FORWARD, TrainedModel
from .network import NetworkTopology, TrainingConfig, TrainingDivergence, train


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="specbench",
        description="Virtual spectrophotometer pipeline: simulate, train, search, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", help="synthesize a Beer's-law corpus CSV")
    p.add_argument("--count", type=int, default=6000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise-sigma", type=float, default=0.005)
    p.add_argument("--co-min", type=float, default=0.02)
    p.add_argument("--co-max", type=float, default=0.10)
    p.add_argument("--ni-min", type=float, default=0.02)
    p.add_argument("--ni-max", type=float, default=0.10)
    p.add_argument("--path-length-cm", type=float, default=1.0)
    p.add_argument("--bands", help="INI band-model config (defaults built in)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("split", help="shuffle + 70/10/20 split; writes norm params too")
    p.add_argument("--data", required=True, dest="data_csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.add_argument(
        "--norm-on-train",
        action="store_true",
        help="compute normalization statistics on the training split only",
    )

    for name, direction in (("train", FORWARD), ("train-dual", DUAL)):
        p = sub.add_parser(
            name,
            help=f"train the {direction} model "
            + ("(spectrum -> concentrations)" if direction == FORWARD else "(concentrations -> spectrum)"),
        )
        p.set_defaults(direction=direction)
        p.add_argument("--train", required=True, dest="train_csv")
        p.add_argument("--test", required=True, dest="test_csv")
        p.add_argument("--norm", required=True, dest="norm_json")
        p.add_argument("--hidden", default="70", help="comma-separated hidden widths")
        jump = p.add_mutually_exclusive_group()
        jump.add_argument("--jump", dest="jump", action="store_true", default=True)
        jump.add_argument("--no-jump", dest="jump", action="store_false")
        p.add_argument("--lr", type=float, default=0.1)
        p.add_argument("--momentum", type=float, default=0.8)
        p.add_argument("--max-epochs", type=int, default=500)
        p.add_argument("--patience", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", required=True, help="model JSON path")
        p.add_argument("--trace", help="per-epoch MSE trace CSV path")

    p = sub.add_parser("achem", help="artificial-chemistry structure/hyperparameter search")
    p.add_argument("--train", required=True, dest="train_csv")
    p.add_argument("--test", required=True, dest="test_csv")
    p.add_argument("--validation", required=True, dest="validation_csv")
    p.add_argument("--norm", required=True, dest="norm_json")
    p.add_argument("--direction", choices=[FORWARD, DUAL], default=DUAL)
    p.add_argument("--population", type=int, default=50)
    p.add_argument("--cycles", type=int, default=10_000)
    p.add_argument("--consensus", type=float, default=0.80)
    p.add_argument("--collisions", type=int, default=10)
    p.add_argument("--wall-prob", type=float, default=0.2)
    p.add_argument("--budget", type=int, default=2000, help="max epochs per molecule")
    p.add_argument("--max-hidden-layers", type=int, default=3)
    p.add_argument("--width-max", type=int, default=200)
    p.add_argument("--fitness", choices=["pearson", "neg_mse"], default="pearson")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--best-out", required=True, help="best-molecule JSON path")
    p.add_argument("--history-out", required=True, help="per-cycle history CSV path")

    p = sub.add_parser("eval", help="correlation report for a trained model on a CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True, dest="data_csv")
    p.add_argument("--out-prefix", help="write <prefix>.csv and <prefix>.dat (gnuplot)")

    p = sub.add_parser("predict", help="one-shot prediction on inline values")
    p.add_argument("--model", required=True)
    p.add_argument("--co", type=float, help="cobalt molarity (dual model)")
    p.add_argument("--ni", type=float, help="nickel molarity (dual model)")
    p.add_argument("--absorbance", help="comma-separated readings (forward model)")

    p = sub.add_parser("serve", help="run the HTTP prediction service")
    p.add_argument("--addr", default=os.environ.get(service_mod.ADDR_ENV, "127.0.0.1:8000"))
    p.add_argument("--model-dir", default=os.environ.get(service_mod.MODEL_DIR_ENV))
    p.add_argument("--static-dir", help="directory of UI assets served at /")
    p.add_argument("--bands", help="INI band-model config for /api/model metadata")

    return parser


def _load_bands(path):
    if not path:
        return spectral.DEFAULT_CO, spectral.DEFAULT_NI
    species = spectral.load_band_config(path)
    try:
        return species["Co"], species["Ni"]
    except KeyError as exc:
        raise ValueError(f"band config must define sections Co and Ni; missing {exc}") from exc


def _xy(samples: SampleSet, norm: NormalizationParams, direction: str):
    cols = samples.columns()
    scaled = norm.apply(cols, samples.column_names)
    conc, ab = scaled[:, :2], scaled[:, 2:]
    return (ab, conc) if direction == FORWARD else (conc, ab)


def _cmd_gen_data(args) -> int:
    co_spec, ni_spec = _load_bands(args.bands)
    spec = spectral.GenerationSpec(
        co_min=args.co_min,
        co_max=args.co_max,
        ni_min=args.ni_min,
        ni_max=args.ni_max,
        count=args.count,
        noise_sigma=args.noise_sigma,
        path_length_cm=args.path_length_cm,
        seed=args.seed,
        co_spectrum=co_spec,
        ni_spectrum=ni_spec,
    )
    spectral.generate_dataset(spec).save_csv(args.out)
    print(f"wrote {args.count} records to {args.out}")
    return 0


def _cmd_split(args) -> int:
    samples = SampleSet.load_csv(args.data_csv)
    parts = data_mod.split(samples, args.seed)
    _, norm = data_mod.normalize(parts.train if args.norm_on_train else samples)
    prefix = args.out_prefix
    parts.train.save_csv(f"{prefix}_train.csv")
    parts.test.save_csv(f"{prefix}_test.csv")
    parts.validation.save_csv(f"{prefix}_validation.csv")
    norm.save(f"{prefix}_norm.json")
    print(
        f"split {len(samples)} records into {len(parts.train)}/{len(parts.test)}/"
        f"{len(parts.validation)} (train/test/validation); params in {prefix}_norm.json"
    )
    return 0


def _cmd_train(args) -> int:
    train_set = SampleSet.load_csv(args.train_csv)
    test_set = SampleSet.load_csv(args.test_csv)
    norm = NormalizationParams.load(args.norm_json)
    widths = tuple(int(w) for w in args.hidden.split(","))
    n_abs = train_set.wavelengths_nm.shape[0]
    in_count, out_count = (n_abs, 2) if args.direction == FORWARD else (2, n_abs)
    topology = NetworkTopology(in_count, widths, out_count, jump_connections=args.jump)
    config = TrainingConfig(
        learning_rate=args.lr,
        momentum=args.momentum,
        max_epochs=args.max_epochs,
        patience=args.patience,
        seed=args.seed,
    )
    tx, ty = _xy(train_set, norm, args.direction)
    vx, vy = _xy(test_set, norm, args.direction)
    weights, trace = train(topology, tx, ty, vx, vy, config)
    model = TrainedModel(
        direction=args.direction,
        topology=topology,
        weights=weights,
        norm=norm,
        wavelengths_nm=train_set.wavelengths_nm,
        provenance={
            "seed": args.seed,
            "learning_rate": args.lr,
            "momentum": args.momentum,
            "epochs_run": len(trace.train_mse),
            "best_epoch": trace.best_epoch,
            "stopped_reason": trace.stopped_reason,
            "train_records": len(train_set),
            "test_records": len(test_set),
        },
    )
    model.save(args.out)
    if args.trace:
        trace.save_csv(args.trace)
    print(
        f"trained {args.direction} model: best epoch {trace.best_epoch}/"
        f"{len(trace.train_mse)} (test MSE {trace.test_mse[trace.best_epoch - 1]:.3e}, "
        f"{trace.stopped_reason}); saved to {args.out}"
    )
    return 0


def _cmd_achem(args) -> int:
    norm = NormalizationParams.load(args.norm_json)
    sets = [
        SampleSet.load_csv(p)
        for p in (args.train_csv, args.test_csv, args.validation_csv)
    ]
    n_abs = sets[0].wavelengths_nm.shape[0]
    in_count, out_count = (n_abs, 2) if args.direction == FORWARD else (2, n_abs)
    config = reactor_mod.ReactorConfig(
        input_count=in_count,
        output_count=out_count,
        population_size=args.population,
        max_cycles=args.cycles,
        consensus_fraction=args.consensus,
        collisions_per_cycle=args.collisions,
        wall_collision_probability=args.wall_prob,
        max_epochs_per_molecule=args.budget,
        seed=args.seed,
        max_hidden_layers=args.max_hidden_layers,
        width_max=args.width_max,
        fitness_mode=args.fitness,
    )
    data = tuple(_xy(s, norm, args.direction) for s in sets)
    result = reactor_mod.run_reactor(config, data=data)
    result.best.save(args.best_out)
    result.save_history_csv(args.history_out)
    print(
        f"reactor finished after {result.cycles_run} cycles ({result.termination_reason}); "
        f"best fitness {result.best.fitness:.4f} with structure {result.best.structure}"
    )
    return 0


def _cmd_eval(args) -> int:
    model = TrainedModel.load(args.model)
    samples = SampleSet.load_csv(args.data_csv)
    report = evaluate_model(model, samples)
    print(report.format_table())
    if args.out_prefix:
        report.save_csv(f"{args.out_prefix}.csv")
        report.save_gnuplot(f"{args.out_prefix}.dat")
    return 0


def _cmd_predict(args) -> int:
    model = TrainedModel.load(args.model)
    if model.direction == DUAL:
        if args.co is None or args.ni is None:
            raise ValueError("dual model prediction requires --co and --ni")
        spectrum = model.predict(np.array([[args.co, args.ni]]))[0]
        for lam, a in zip(model.wavelengths_nm, spectrum):
            print(f"{lam:g},{a!r}")
    else:
        if args.absorbance is None:
            raise ValueError("forward model prediction requires --absorbance")
        values = np.array([float(v) for v in args.absorbance.replace(",", " ").split()])
        expected = model.wavelengths_nm.shape[0]
        if values.shape[0] != expected:
            raise ValueError(f"expected {expected} absorbance values, found {values.shape[0]}")
        co, ni = model.predict(values[None, :])[0]
        print(f"co_M={co!r} ni_M={ni!r}")
    return 0


def _cmd_serve(args) -> int:
    if not args.model_dir:
        raise ValueError(
            f"--model-dir (or ${service_mod.MODEL_DIR_ENV}) is required"
        )
    bands = None
    if args.bands:
        co_spec, ni_spec = _load_bands(args.bands)
        bands = spectral.band_config_dict(co_spec, ni_spec)
    registry = service_mod.ModelRegistry.load(args.model_dir, bands)
    service_mod.serve(registry, args.addr, args.static_dir)
    return 0


_COMMANDS = {
    "gen-data": _cmd_gen_data,
    "split": _cmd_split,
    "train": _cmd_train,
    "train-dual": _cmd_train,
    "achem": _cmd_achem,
    "eval": _cmd_eval,
    "predict": _cmd_predict,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except TrainingDivergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
