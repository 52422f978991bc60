from .corpus import register_module, register_ring, CorpusConfig, Instance, DEFAULT_RINGS, build_module, build_ring, find_instance, generate_corpus
from .verdict import SuiteReport, Verdict, minimize_counterexample
from .theorems import THEOREMS, THEOREM_IDS, Context
from .suite import run_instances, run_suite, verify_theorem, cormain_universal_for, revalidate

__all__ = ["register_module", "register_ring", "CorpusConfig", "Instance", "DEFAULT_RINGS", "build_module", "build_ring", "find_instance",
           "generate_corpus", "SuiteReport", "Verdict", "minimize_counterexample", "THEOREMS",
           "THEOREM_IDS", "Context", "run_instances", "run_suite", "verify_theorem", "cormain_universal_for", "revalidate"]
