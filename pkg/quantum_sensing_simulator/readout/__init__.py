from .readout import (
    SpamModel,
    MeasuredSignals,
    InvalidRate,
    InvalidSpamModel,
    InvalidProbability,
    measure_bell,
    bell_probabilities,
    spam_matrix,
    spam_apply,
    confusion_apply,
)
