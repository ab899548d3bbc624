"""JSON files holding one square complex matrix.

The format is::

    {"dim": 2, "entries": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]],
     "label": "maximally mixed"}

with the entries as [real, imaginary] pairs in row-major order.  Floats are
written with Python's shortest round-trip representation, so reading back
gives the same doubles.
"""

from functools import cached_property
from numbers import Real
from qumetrics.errors import ParseError
from qumetrics.errors import ValidationError

import json
import math
import numpy as np
import pathlib


class BaseMatrixFile:
    def __init__(self, file_location):
        self.file_location = file_location
        self.path = pathlib.Path(self.file_location).resolve()

    @cached_property
    def data(self):
        """Read the file.  A missing file raises ``FileNotFoundError``."""
        contents = self.path.read_text()
        try:
            data = json.loads(contents)
        except json.JSONDecodeError as exc:
            raise ParseError(self.file_location, "(document)", str(exc)) from None
        if not isinstance(data, dict):
            raise ParseError(self.file_location, "(document)", "expected a JSON object")
        return data

    @property
    def dim(self):
        dim = self.data.get("dim")
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise ParseError(
                self.file_location, "dim", f"expected a positive integer, got {dim!r}"
            )
        return dim

    @property
    def label(self):
        label = self.data.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError(
                self.file_location, "label", f"expected a string, got {label!r}"
            )
        return label

    @cached_property
    def matrix(self):
        dim = self.dim
        entries = self.data.get("entries")
        if not isinstance(entries, list):
            raise ParseError(self.file_location, "entries", "expected a list")
        if len(entries) != dim * dim:
            raise ParseError(
                self.file_location,
                "entries",
                f"expected {dim * dim} entries for dim {dim}, got {len(entries)}",
            )
        values = []
        for index, entry in enumerate(entries):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(
                    isinstance(part, Real) and not isinstance(part, bool)
                    for part in entry
                )
            ):
                raise ParseError(
                    self.file_location,
                    f"entries[{index}]",
                    f"expected a [real, imaginary] pair of numbers, got {entry!r}",
                )
            if not all(math.isfinite(part) for part in entry):
                raise ParseError(
                    self.file_location,
                    f"entries[{index}]",
                    f"expected finite numbers, got {entry!r}",
                )
            values.append(complex(entry[0], entry[1]))
        return np.array(values, dtype=complex).reshape(dim, dim)

    def _build(self, factory):
        """Build our typed matrix, naming this file in validation errors."""
        try:
            return factory(self.matrix, label=self.label or self.path.stem)
        except ValidationError as exc:
            raise ValidationError(
                exc.invariant, exc.residual, f"{self.file_location}: {exc}"
            ) from exc

    @classmethod
    def dump(cls, matrix, file_location, label=None):
        """Write a matrix to file_location and return the file object."""
        matrix = np.asarray(matrix)
        if label is None:
            label = getattr(matrix, "label", None)
        data = {
            "dim": int(matrix.shape[0]),
            "entries": [[float(z.real), float(z.imag)] for z in matrix.ravel()],
        }
        if label is not None:
            data["label"] = label
        path = pathlib.Path(file_location)
        path.write_text(json.dumps(data, indent=1) + "\n")
        return cls(path)

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.file_location}>"


class StateFile(BaseMatrixFile):
    @cached_property
    def state(self):
        # Import here to avoid circular imports.
        from qumetrics.states import DensityMatrix

        return self._build(DensityMatrix)

    @classmethod
    def dump(cls, rho, file_location, label=None):
        if label is None:
            label = getattr(rho, "label", None)
        return super().dump(rho, file_location, label=label)


class ObservableFile(BaseMatrixFile):
    """Same format as a state file, but only Hermiticity is required."""

    @cached_property
    def observable(self):
        # Import here to avoid circular imports.
        from qumetrics.observables import Observable

        return self._build(Observable)
