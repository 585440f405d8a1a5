"""Independence logic with team semantics: model checking, normal forms,
first-order approximations and a natural-deduction proof checker."""

__version__ = "0.1.0"
