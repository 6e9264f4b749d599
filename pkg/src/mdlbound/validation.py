"""Input checks shared by the estimators and the command line."""

from numbers import Integral, Real

from .parsing import ParsingModel, SymbolSequence, infer_alphabet


def check_sequence(X, alphabet=None) -> SymbolSequence:
    """Coerce ``X`` to a ``SymbolSequence``.

    Accepts a ``SymbolSequence``, a string, a FASTA record (anything with a
    ``sequence`` attribute) or an iterable of one-character symbols.  A
    declared ``alphabet`` overrides the one carried by ``X``.
    """
    if isinstance(X, SymbolSequence):
        if alphabet is None or tuple(alphabet) == X.alphabet:
            return X
        return infer_alphabet(X.symbols, alphabet)
    if hasattr(X, "sequence"):
        X = X.sequence
    if not isinstance(X, str):
        try:
            X = "".join(X)
        except TypeError:
            raise TypeError(f"expected a symbol sequence, got {type(X).__name__}") from None
    return infer_alphabet(X, alphabet)


def check_model(model) -> ParsingModel:
    if isinstance(model, ParsingModel):
        return model
    if isinstance(model, str):
        return ParsingModel.from_label(model)
    raise TypeError(f"expected a ParsingModel or a label, got {type(model).__name__}")


def check_scalar(x, name, target_type, min_val=None, max_val=None, include_min=True):
    """Type and range check for a hyperparameter; returns ``x``."""
    if isinstance(x, bool) or not isinstance(x, target_type):
        raise TypeError(f"{name} must be {target_type}, got {type(x).__name__}")
    if min_val is not None and (x < min_val or (x == min_val and not include_min)):
        raise ValueError(f"{name} must be {'>=' if include_min else '>'} {min_val}, got {x}")
    if max_val is not None and x > max_val:
        raise ValueError(f"{name} must be <= {max_val}, got {x}")
    return x


def check_positive_int(x, name):
    return check_scalar(x, name, Integral, min_val=1)


def check_positive_real(x, name):
    return check_scalar(x, name, Real, min_val=0, include_min=False)
