"""Run an evaluation protocol with either classifier and collect predictions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from fqrc.baselines import KNNClassifier
from fqrc.core import ClassDistribution, EvalParams, EvalReport, MembershipModel, ValidationError
from fqrc.data import Dataset, fixed_split, leave_one_out
from fqrc.evaluation import evaluate
from fqrc.infer import infer_batch
from fqrc.learn import DEFAULT_BINS, train

PROTOCOLS = ("loo", "manifest", "model")
CLASSIFIERS = ("fqrc", "knn")


class ProtocolError(ValidationError):
    pass


@dataclass
class RunResult:
    test: Dataset
    predictions: list[ClassDistribution]
    report: EvalReport


def fit_fqrc(ds: Dataset, bins: int = DEFAULT_BINS) -> MembershipModel:
    return train(ds.samples, ds.n_classes, bins, ds.class_names, ds.feature_names)


def _one_hot(k: int, K: int) -> ClassDistribution:
    return ClassDistribution(tuple(1.0 if i == k else 0.0 for i in range(K)))


def _check_model(model: MembershipModel, ds: Dataset) -> None:
    if model.feature_names != ds.feature_names:
        raise ProtocolError(
            f"model features {list(model.feature_names)} do not match the dataset's "
            f"{list(ds.feature_names)}"
        )
    if model.class_names != ds.class_names:
        raise ProtocolError(
            f"model classes {list(model.class_names)} do not match the dataset's "
            f"{list(ds.class_names)}"
        )


def _predict(train_ds: Dataset, test_ds: Dataset, classifier: str, bins: int, k: int,
             model: Optional[MembershipModel] = None) -> list[ClassDistribution]:
    if classifier == "fqrc":
        m = model if model is not None else fit_fqrc(train_ds, bins)
        return infer_batch(m, test_ds.X)
    if classifier == "knn":
        knn = KNNClassifier(k).fit(train_ds.samples)
        return [_one_hot(c, test_ds.n_classes) for c in knn.predict(test_ds.X)]
    raise ProtocolError(f"unknown classifier {classifier!r}")


def run(
    ds: Dataset,
    protocol: str = "loo",
    classifier: str = "fqrc",
    params: EvalParams = EvalParams(),
    bins: int = DEFAULT_BINS,
    k: int = 5,
    manifest: Optional[Mapping[int, str]] = None,
    model: Optional[MembershipModel] = None,
    cut_references: bool = False,
) -> RunResult:
    """Produce predictions under ``protocol`` and score them.

    ``loo`` retrains on every fold, ``manifest`` trains on the manifest's
    train rows (or uses ``model`` when given) and ``model`` applies a
    supplied model to every row.
    """
    if classifier not in CLASSIFIERS:
        raise ProtocolError(f"unknown classifier {classifier!r}")
    if protocol == "loo":
        folds = leave_one_out(ds)
        preds = []
        for fold in folds:
            test = ds.subset([fold.index])
            preds += _predict(fold.train, test, classifier, bins, k)
        test_ds = ds
    elif protocol == "manifest":
        if manifest is None:
            raise ProtocolError("manifest protocol needs a manifest")
        train_ds, test_ds = fixed_split(ds, manifest)
        if len(test_ds) == 0:
            raise ProtocolError("manifest leaves nothing to test")
        if model is not None and classifier == "fqrc":
            _check_model(model, ds)
        elif len(train_ds) == 0:
            raise ProtocolError("manifest leaves nothing to train on")
        preds = _predict(train_ds, test_ds, classifier, bins, k, model)
    elif protocol == "model":
        if classifier != "fqrc" or model is None:
            raise ProtocolError("the 'model' protocol needs --classifier fqrc and a model")
        _check_model(model, ds)
        test_ds = ds
        preds = infer_batch(model, ds.X)
    else:
        raise ProtocolError(f"unknown protocol {protocol!r}")

    report = evaluate(
        preds,
        test_ds.labels,
        references=test_ds.references,
        params=params,
        class_names=ds.class_names,
        cut_references=cut_references,
    )
    return RunResult(test_ds, preds, report)
