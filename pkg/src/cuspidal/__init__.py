"""Exact verification toolkit for the fundamental groups, Alexander
polynomials, and singular geometry of a family of cuspidal plane curves."""

from .abelian import (AbelianStructure, IntegerMatrix, abelianization,
                      commutator_abelianization_rank, relator_matrix,
                      smith_normal_form)
from .alexander import (AlexanderMatrix, LaurentPolynomial, alexander_matrix,
                        alexander_polynomial, cyclotomic_base,
                        cyclotomic_target, elementary_ideal_gcd,
                        fox_derivative, laurent_gcd)
from .geometry import (PrimeField, ProjectivePoint, SplittingReport,
                       SuperabundanceReport, TernaryForm, choose_prime,
                       curve_form, milnor_ratio, singular_points,
                       splitting_check_n2, superabundance,
                       superabundance_multi, tangent_cone_rank)
from .homcount import (HomCountReport, count_homs, relator_triviality_check,
                       word_image)
from .presentations import (GroupMap, MapCheckReport, derive_pi1_via_rs,
                            long_relator, map_check, oka_quotient,
                            presentation_G, presentation_G_raw,
                            presentation_oka, presentation_pi1,
                            presentation_pi1_reduced, presentation_zariski3,
                            zariski_aux_datum, zariski_iso_candidate)
from .rewriting import (AbelianTarget, SchreierSystem, Transversal,
                        build_transversal, rewrite_word,
                        subgroup_presentation)
from .words import (Presentation, Word, conjugate, invert, multiply,
                    parse_presentation, format_presentation, simplify,
                    tietze_eliminate)

__all__ = [name for name in dir() if not name.startswith("_")]
