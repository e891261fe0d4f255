"""Exception types shared by all troppatch modules."""

from __future__ import annotations


class TropPatchError(Exception):
    """Base class for every error raised by the library."""

    code = "Error"


def _make(name: str, doc: str) -> type:
    return type(name, (TropPatchError,), {"__doc__": doc, "code": name})


PointsNotAffine = _make("PointsNotAffine", "A point set is not an affine subspace of (Z/2)^m.")
DimTooLarge = _make("DimTooLarge", "Requested subspace dimension exceeds the ambient subspace.")
DependentBasis = _make("DependentBasis", "Vectors expected to be independent over GF(2) are not.")
NotAFan = _make("NotAFan", "A collection of cones does not form a fan.")
UnknownCell = _make("UnknownCell", "No cell with the given id.")
UnknownFace = _make("UnknownFace", "No face with the given id.")
RecessionNotInFan = _make("RecessionNotInFan", "A recession cone is not a cone of the ambient fan.")
NoVertex = _make("NoVertex", "The polyhedron has no vertex.")
HasLoops = _make("HasLoops", "The matroid has loops.")
FlagNotMaximal = _make("FlagNotMaximal", "The chain of flats is not a maximal flag.")
TopesNotAffine = _make("TopesNotAffine", "The tope set of a flag minor is not an affine subspace.")
NotATope = _make("NotATope", "The sign vector is not a tope.")
NotASubdivision = _make("NotASubdivision", "The fine complex does not subdivide the coarse one.")
PhaseInvalid = _make("PhaseInvalid", "The real phase structure fails validation.")
NotPointed = _make("NotPointed", "The fan is not pointed.")
NotStronglyUnimodular = _make("NotStronglyUnimodular", "A cell is not strongly unimodular.")
NotSubcomplex = _make("NotSubcomplex", "The cell set is not closed under taking faces.")
NotFunctorial = _make("NotFunctorial", "Cosheaf corestrictions do not compose.")
MatroidMismatch = _make("MatroidMismatch", "The oriented matroid does not lie over the given matroid.")
ParseError = _make("ParseError", "Input file is not valid JSON.")
SchemaError = _make("SchemaError", "Input JSON does not follow the expected schema.")
ValidationError = _make("ValidationError", "Input object fails validation.")
UnknownCommand = _make("UnknownCommand", "Unknown CLI subcommand.")
MissingObject = _make("MissingObject", "A referenced object was not loaded.")
