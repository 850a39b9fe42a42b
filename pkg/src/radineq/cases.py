"""Case container: the operators, parameters, functions, and vectors one
bound evaluation consumes.

Multi-operator families store a tuple of matrices under a ``_i`` role
("A_i", "B_i", ...); single roles store one matrix.  Vectors carry the
unit (or ball) vectors the vector-level lemmas quantify over.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import BadFunctionError, BadParametersError, NotConjugateError
from .linalg import as_matrix, matrix_from_json, matrix_to_json, vector_from_json, vector_to_json
from .scalarfn import ScalarFunction, power

LIST_ROLES = ("A_i", "B_i", "C_i", "D_i", "X_i")


@dataclass
class InequalityCase:
    operators: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        ops = {}
        for role, value in self.operators.items():
            if role in LIST_ROLES:
                mats = tuple(as_matrix(m) for m in value)
                if not mats:
                    raise BadParametersError("role %r must hold at least one operator" % role)
                ops[role] = mats
            else:
                ops[role] = as_matrix(value)
        self.operators = ops
        self.vectors = {k: np.asarray(v, dtype=complex).reshape(-1) for k, v in self.vectors.items()}
        self.params = {k: (int(v) if k in ("n_ops", "m", "n_pow", "k") else float(v)) for k, v in self.params.items()}
        self.validate()

    # -- structure ---------------------------------------------------------

    @property
    def dim(self) -> int:
        for value in self.operators.values():
            m = value[0] if isinstance(value, tuple) else value
            return int(m.shape[0])
        for v in self.vectors.values():
            return int(v.shape[0])
        raise BadParametersError("empty case has no dimension")

    @property
    def n_ops(self) -> int:
        for role in LIST_ROLES:
            if role in self.operators:
                return len(self.operators[role])
        return int(self.params.get("n_ops", 1))

    def op(self, role: str) -> np.ndarray:
        try:
            value = self.operators[role]
        except KeyError:
            raise BadParametersError("case lacks operator role %r (has %s)" % (role, sorted(self.operators)))
        if isinstance(value, tuple):
            raise BadParametersError("role %r holds a family; use ops()" % role)
        return value

    def ops(self, role: str) -> tuple:
        try:
            value = self.operators[role]
        except KeyError:
            raise BadParametersError("case lacks operator family %r (has %s)" % (role, sorted(self.operators)))
        if not isinstance(value, tuple):
            raise BadParametersError("role %r holds a single operator; use op()" % role)
        return value

    def vector(self, name: str) -> np.ndarray:
        try:
            return self.vectors[name]
        except KeyError:
            raise BadParametersError("case lacks vector %r (has %s)" % (name, sorted(self.vectors)))

    def function(self, name: str) -> ScalarFunction:
        try:
            return self.functions[name]
        except KeyError:
            raise BadParametersError("case lacks scalar function %r (has %s)" % (name, sorted(self.functions)))

    def validate(self) -> None:
        dims = set()
        for value in self.operators.values():
            for m in value if isinstance(value, tuple) else (value,):
                if m.shape[0] != m.shape[1]:
                    raise BadParametersError("operators must be square, got %r" % (m.shape,))
                dims.add(m.shape[0])
        for v in self.vectors.values():
            dims.add(v.shape[0])
        if len(dims) > 1:
            raise BadParametersError("mixed dimensions in one case: %s" % sorted(dims))
        lens = {role: len(v) for role, v in self.operators.items() if isinstance(v, tuple)}
        if len(set(lens.values())) > 1:
            raise BadParametersError("operator families of unequal length: %s" % lens)
        if lens and "n_ops" in self.params and self.params["n_ops"] != next(iter(lens.values())):
            raise BadParametersError("n_ops=%s disagrees with family length %s" % (self.params["n_ops"], lens))
        p, q = self.params.get("p"), self.params.get("q")
        if p is not None and q is not None and abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
            raise NotConjugateError("case exponents (p, q) = (%r, %r) are not conjugate" % (p, q))
        for fname in self.functions:
            if not isinstance(self.functions[fname], ScalarFunction):
                raise BadFunctionError("function %r is not a ScalarFunction" % fname)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        def enc_fn(f: ScalarFunction) -> dict:
            if f.kind != "power":
                raise BadFunctionError(
                    "only power functions serialize; %r is custom" % (f.name or "fn")
                )
            return {"kind": "power", "exponent": float(f.exponent)}

        enc_ops = {}
        for role, value in self.operators.items():
            if isinstance(value, tuple):
                enc_ops[role] = [matrix_to_json(m) for m in value]
            else:
                enc_ops[role] = matrix_to_json(value)
        return {
            "label": self.label,
            "operators": enc_ops,
            "params": {k: float(v) for k, v in self.params.items()},
            "functions": {k: enc_fn(f) for k, f in self.functions.items()},
            "vectors": {k: vector_to_json(v) for k, v in self.vectors.items()},
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "InequalityCase":
        ops = {}
        for role, value in obj.get("operators", {}).items():
            if isinstance(value, list):
                ops[role] = [matrix_from_json(m) for m in value]
            else:
                ops[role] = matrix_from_json(value)
        fns = {}
        for name, fn_json in obj.get("functions", {}).items():
            if fn_json.get("kind") != "power":
                raise BadFunctionError("unknown serialized function kind %r" % fn_json.get("kind"))
            fns[name] = power(fn_json["exponent"])
        return cls(
            operators=ops,
            params=dict(obj.get("params", {})),
            functions=fns,
            vectors={k: vector_from_json(v) for k, v in obj.get("vectors", {}).items()},
            label=obj.get("label", ""),
        )

    def digest(self) -> str:
        """Stable content hash; custom functions hash by their name tag."""

        def enc_fn(f: ScalarFunction):
            if f.kind == "power":
                return {"kind": "power", "exponent": float(f.exponent)}
            return {"kind": "custom", "name": f.name}

        payload = {
            "label": self.label,
            "operators": {
                role: ([matrix_to_json(m) for m in v] if isinstance(v, tuple) else matrix_to_json(v))
                for role, v in self.operators.items()
            },
            "params": {k: float(v) for k, v in self.params.items()},
            "functions": {k: enc_fn(f) for k, f in self.functions.items()},
            "vectors": {k: vector_to_json(v) for k, v in self.vectors.items()},
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()
