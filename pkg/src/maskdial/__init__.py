"""maskdial: a workbench for goal-oriented dialog with multiple valid answers.

The package covers the full loop: simulating restaurant-reservation dialogs
over a generated knowledge base (with every system turn annotated with the
set of all valid next utterances), featurizing them for retrieval models,
training an end-to-end memory network and its masked variant, and scoring
predictions with multi-answer per-turn / per-dialog accuracy.
"""

__version__ = "0.1.0"
