"""Command-line interface: ``fqrc train|infer|rank|evaluate``.

Exit codes: 0 success, 2 validation/data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence, TextIO

import numpy as np

from fqrc.core import ClassDistribution, EvalParams, ValidationError
from fqrc.data import load_csv, load_features, load_manifest
from fqrc.experiment import CLASSIFIERS, PROTOCOLS, fit_fqrc, run
from fqrc.infer import alpha_cut, classify_binary, infer_batch
from fqrc.learn import DEFAULT_BINS
from fqrc.persist import dumps_report, fmt, load_model, save_model
from fqrc.rank import Thresholds, describe, interpret, symbol_string

EXIT_OK, EXIT_DATA, EXIT_IO = 0, 2, 3

log = logging.getLogger("fqrc")


def _parse_vector(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise ValidationError(f"bad inline vector {text!r}") from None


def _inputs(args, model) -> tuple[list[str], np.ndarray]:
    if args.vector:
        X = np.asarray([_parse_vector(v) for v in args.vector], dtype=np.float64)
        if X.ndim != 2:
            raise ValidationError("inline vectors must all have the same length")
        return [str(i + 1) for i in range(len(X))], X
    if not args.input:
        raise ValidationError("give an input CSV or at least one --vector")
    ids, names, X = load_features(args.input)
    if len(names) != model.n_features:
        raise ValidationError(
            f"input has {len(names)} features, model expects {model.n_features}"
        )
    if list(names) != list(model.feature_names):
        log.warning("input feature names %s differ from the model's %s",
                    names, list(model.feature_names))
    return ids, X


def _distributions(args, model, X) -> list[ClassDistribution]:
    dists = infer_batch(model, X)
    if args.alpha_cut is not None:
        dists = [alpha_cut(d, args.alpha_cut) for d in dists]
    return dists


def _open_out(path: Optional[str]) -> TextIO:
    return open(path, "w", encoding="utf-8") if path else sys.stdout


def cmd_train(args) -> int:
    ds = load_csv(args.dataset, classes=_split_list(args.classes))
    model = fit_fqrc(ds, args.bins)
    save_model(model, args.out)
    print(f"trained on {len(ds)} samples, J={model.n_features}, K={model.n_classes}, "
          f"B={args.bins}")
    for name, count in zip(model.class_names, model.class_counts):
        print(f"  {name}: {count} samples")
    width = max(len(n) for n in model.feature_names)
    for j, fname in enumerate(model.feature_names):
        for k, cname in enumerate(model.class_names):
            t = model[j, k]
            print(f"  {fname:<{width}}  {cname}: a={t.a:.6g} b={t.b:.6g} "
                  f"alpha={t.alpha:.6g} beta={t.beta:.6g}")
    print(f"model written to {args.out}")
    return EXIT_OK


def cmd_infer(args) -> int:
    model = load_model(args.model)
    ids, X = _inputs(args, model)
    dists = _distributions(args, model, X)
    out = _open_out(args.out)
    try:
        out.write("# id\t" + "\t".join(model.class_names)
                  + ("\tlabel\tname" if args.binary else "") + "\n")
        for sid, d in zip(ids, dists):
            if d.is_all_zero:
                out.write(f"{sid}\tNONE\n")
                continue
            fields = [sid] + [f"{v:.{args.digits}f}" for v in d.r]
            if args.binary:
                k = classify_binary(d)
                fields += [str(k + 1), model.class_names[k]]
            out.write("\t".join(fields) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_rank(args) -> int:
    thresholds = Thresholds.parse(args.thresholds)
    if args.dist:
        names = _split_list(args.classes)
        dists = []
        for text in args.dist:
            r = _parse_vector(text)
            if names is None:
                names = [f"C{k + 1}" for k in range(len(r))]
            if len(r) != len(names):
                raise ValidationError(f"distribution {text!r} does not match {len(names)} classes")
            dists.append(ClassDistribution.normalized(r))
        ids = [str(i + 1) for i in range(len(dists))]
    else:
        if not args.model:
            raise ValidationError("rank needs a model (or --dist)")
        model = load_model(args.model)
        names = list(model.class_names)
        ids, X = _inputs(args, model)
        dists = _distributions(args, model, X)
    out = _open_out(args.out)
    try:
        for sid, d in zip(ids, dists):
            ri = interpret(d, thresholds, args.diff_mode)
            out.write(f"{sid}\t{describe(ri, names)}\t{symbol_string(ri, names)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _print_report(report, file=None) -> None:
    file = file or sys.stdout
    rows = [
        ("samples", str(report.n_samples)),
        ("unclassified", str(report.n_unclassified)),
        ("alpha-evaluation accuracy", f"{report.accuracy:.4f}"),
        ("similarity", f"{report.mean_similarity:.4f}"),
        ("error (average std)", f"{report.error_std_average:.4f}"),
        ("macro F-score", f"{report.macro_f_score:.4f}"),
    ]
    w = max(len(k) for k, _ in rows)
    for k, v in rows:
        print(f"{k:<{w}}  {v:>8}", file=file)
    names = report.class_names
    cw = max([len("class")] + [len(n) for n in names])
    print(file=file)
    print(f"{'class':<{cw}}  {'err_mean':>8}  {'err_std':>8}  {'F':>8}", file=file)
    for k, n in enumerate(names):
        print(f"{n:<{cw}}  {report.error_mean[k]:>8.4f}  {report.error_std[k]:>8.4f}  "
              f"{report.f_scores[k]:>8.4f}", file=file)


def cmd_evaluate(args) -> int:
    ds = load_csv(args.dataset, classes=_split_list(args.classes))
    model = load_model(args.model) if args.model else None
    manifest = load_manifest(args.manifest) if args.manifest else None
    if args.protocol == "loo" and model is not None:
        log.warning("--model is ignored under leave-one-out; every fold is retrained")
        model = None
    params = EvalParams(alpha=args.alpha, beta_w=args.beta, gamma_w=args.gamma,
                        alpha_cut=args.alpha_cut)
    result = run(ds, args.protocol, args.classifier, params, bins=args.bins, k=args.k,
                 manifest=manifest, model=model, cut_references=args.cut_reference)
    _print_report(result.report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps_report(result.report))
    if args.predictions:
        with open(args.predictions, "w", encoding="utf-8") as fh:
            fh.write("# id\t" + "\t".join(ds.class_names) + "\n")
            for i, d in enumerate(result.predictions):
                sid = result.test.sample_id(i)
                body = "NONE" if d.is_all_zero else "\t".join(fmt(v) for v in d.r)
                fh.write(f"{sid}\t{body}\n")
    return EXIT_OK


def _split_list(text: Optional[str]) -> Optional[list[str]]:
    if text is None:
        return None
    return [p.strip() for p in text.split(",") if p.strip()]


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="CSV with f:<name> columns (optional id)")
    p.add_argument("--vector", action="append", metavar="X1,X2,...",
                   help="inline feature vector; repeatable")
    p.add_argument("--alpha-cut", type=float, default=None, metavar="TAU",
                   help="zero confidences below TAU and renormalize")
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fqrc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="learn a membership model from a labeled CSV")
    p.add_argument("dataset")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--classes", help="explicit comma-separated class order")
    p.add_argument("--out", required=True, help="model file to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("infer", help="class confidence distribution per sample")
    p.add_argument("model")
    _add_input_args(p)
    p.add_argument("--binary", action="store_true", help="append the argmax class")
    p.add_argument("--digits", type=int, default=4)
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("rank", help="symbolic ranking per sample")
    p.add_argument("model", nargs="?")
    _add_input_args(p)
    p.add_argument("--thresholds", default="0,0.5,1.0", metavar="EQ,HI,MUCH")
    p.add_argument("--diff-mode", choices=("adjacent", "max"), default="adjacent")
    p.add_argument("--dist", action="append", metavar="R1,R2,...",
                   help="rank a given distribution instead of running a model")
    p.add_argument("--classes", help="class names for --dist")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("evaluate", help="run a protocol and report metrics")
    p.add_argument("dataset")
    p.add_argument("--model", help="model file (manifest/model protocols)")
    p.add_argument("--protocol", choices=PROTOCOLS, default="loo")
    p.add_argument("--manifest", help="file of '<row>,<train|test>' lines")
    p.add_argument("--classifier", choices=CLASSIFIERS, default="fqrc")
    p.add_argument("--k", type=int, default=5, help="neighbours for knn")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--classes", help="explicit comma-separated class order")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--alpha-cut", type=float, default=None, metavar="TAU")
    p.add_argument("--cut-reference", action="store_true",
                   help="apply the alpha-cut to reference distributions too")
    p.add_argument("--out", help="key = value report file")
    p.add_argument("--predictions", help="write per-sample distributions here")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
