"""JSON model files.

Field names and order are fixed and floats are written with ``repr`` (the
shortest string that round-trips), so identical runs give identical bytes.
"""

from __future__ import annotations

import json

from .dataset import Dataset
from .kmeans import ClusterModel, ClusterState, KMeansConfig, cluster_stats, wcss

FORMAT = "cardiotriage-model/1"


class ModelFormatError(ValueError):
    pass


def model_to_dict(m: ClusterModel, d: Dataset) -> dict:
    stats = cluster_stats(m, d)
    return {
        "format": FORMAT,
        "k": m.k,
        "config": {
            "max_passes": m.config.max_passes,
            "metric": m.config.metric,
            "ordering": m.config.ordering,
        },
        "features": list(m.features),
        "ids": list(m.ids),
        "segments": [
            {
                "index": j,
                "members": m.member_ids(j),
                "centroid": list(m.centroids[j]),
                "mean": list(stats.segments[j].mean),
                "std": list(stats.segments[j].std),
                "alpha": stats.segments[j].proportion,
            }
            for j in range(m.k)
        ],
        "wcss": wcss(m.state, d),
        "passes": m.passes,
        "moves": m.moves,
        "converged": m.converged,
    }


def dumps_model(m: ClusterModel, d: Dataset) -> str:
    return json.dumps(model_to_dict(m, d), indent=2) + "\n"


def model_from_dict(obj: dict) -> ClusterModel:
    try:
        if obj.get("format") != FORMAT:
            raise ModelFormatError(f"unsupported model format {obj.get('format')!r}")
        k = int(obj["k"])
        ids = tuple(str(i) for i in obj["ids"])
        features = tuple(str(f) for f in obj["features"])
        segments = obj["segments"]
        if len(segments) != k or k < 1:
            raise ModelFormatError(f"expected {k} segments, found {len(segments)}")
        position = {pid: i for i, pid in enumerate(ids)}
        assignment = [None] * len(ids)
        centroids = []
        sizes = []
        for j, seg in enumerate(segments):
            if int(seg["index"]) != j:
                raise ModelFormatError("segments out of order")
            centroid = [float(v) for v in seg["centroid"]]
            if len(centroid) != len(features):
                raise ModelFormatError(f"segment {j} centroid has wrong length")
            centroids.append(centroid)
            sizes.append(len(seg["members"]))
            for pid in seg["members"]:
                if pid not in position:
                    raise ModelFormatError(f"unknown member id {pid!r}")
                if assignment[position[pid]] is not None:
                    raise ModelFormatError(f"member {pid!r} listed twice")
                assignment[position[pid]] = j
        if any(a is None for a in assignment):
            raise ModelFormatError("some training records belong to no segment")
        cfg = obj["config"]
        config = KMeansConfig(
            max_passes=cfg["max_passes"], metric=cfg["metric"], ordering=cfg["ordering"]
        )
        return ClusterModel(
            state=ClusterState(k, centroids, assignment, sizes),
            passes=int(obj["passes"]),
            moves=int(obj["moves"]),
            converged=bool(obj["converged"]),
            config=config,
            ids=ids,
            features=features,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ModelFormatError(f"malformed model: {exc!r}") from exc


def loads_model(text: str) -> ClusterModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ModelFormatError("model JSON must be an object")
    return model_from_dict(obj)


def load_model(path) -> ClusterModel:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())
