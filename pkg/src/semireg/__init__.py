"""Exact L-infinity liftings of semiregularity maps over Laurent-chart schemes."""

from .exact_ring import LaurentPoly, PolyMatrix, nullspace, rank, rref, solve
from .simplex_forms import MixedForm, whitney_form
from .super_matrix import AlgVal, FormMatrix, kron
from .variety import (ChartAtlas, HomSheaf, LocallyFreeComplex, atlas_from_spec,
                      build_projective_space, direct_sum, end_complex, line_bundle, shift,
                      standard_two_term, structure_sheaf)
from .cech_tot import (CechClass, CechComplex, TotElement, class_in_hypercohomology, class_of,
                       cohomology_dim, tot_bracket, tot_check, tot_differential, tot_pairing,
                       whitney_integrate)
from .algebroid_conn import (Algebroid, SimplicialLifting, atiyah_algebroid_frame,
                             build_simplicial_lifting, der_pairs_algebroid, extension_cocycle)
from .cyclic_linf import (CyclicForm, LinfContext, form_eval, koszul_chi, linf_f, linf_g,
                          shuffles, verify_Cn)
from .deform import (ArtinRing, MCElement, NonAbelianCocycle, bch, gauge_act, mc_residual,
                     obstruction_class, semireg_sigma1, semireg_tau1, z1_check)

__version__ = "0.1.0"
