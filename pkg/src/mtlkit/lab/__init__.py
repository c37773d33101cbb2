from .bindings import Binding, equiv_check
from .corpus import Corpus
from .lemmas import SUITES, lemma_suite
from .report import EquivReport
from .experiments import (acceptance_family_check, family_check, grade_check, hcompat_experiment,
                          indist_experiment, root_degrees)
