"""Self-contained base learners: decision tree, random forest, softmax regression."""

from .tree import DecisionTree, best_split, gini_impurity
from .forest import RandomForest, plurality_vote
from .logistic import LogisticRegression

__all__ = [
    "DecisionTree",
    "RandomForest",
    "LogisticRegression",
    "best_split",
    "gini_impurity",
    "plurality_vote",
]
