//! Combinatorics of graded decomposition numbers for diagrammatic Cherednik
//! algebras: loadings, semistandard tableaux and their degrees, terrains and
//! nested sign sequences, character peeling, χ-sequences and the transport
//! and tensor-factorization bijections between subquotients.

pub mod crosscheck;
pub mod diagonal;
pub mod error;
pub mod gamma;
pub mod io;
pub mod kn;
pub mod laurent;
pub mod loading;
pub mod mp;
pub mod tableaux;
pub mod tensor;
pub mod terrain;

pub use crosscheck::{crosscheck, CrosscheckConfig, CrosscheckReport};
pub use diagonal::{
    chi_equivalent, chi_sequence, component_word, i_diagonals, length_ell, sigma_k, ChiEquivalence, ChiSequence, ChiSymbol, IDiagonal, TransportMap,
};
pub use error::{Error, Result};
pub use gamma::{build_gamma_set, GammaContext};
pub use io::{parse_context, ContextFile, Format, LoadedContext, Output};
pub use kn::{decomp_number, kn_entry, kn_matrix, kn_matrix_for_gamma, DecompReport, DecompositionMatrix, DominancePoset, Engine};
pub use laurent::{bar_involution, bar_split, LaurentPoly};
pub use loading::{coord_of_node, dominates, loading_of, parse_rational, theta_dominance, DominanceOrder, ExactCoord, Loading};
pub use mp::{
    addable_nodes, is_admissible, removable_nodes, residue_multiset, residue_of, Multipartition, Node, ParamContext, Partition, QuantumChar, Residue,
};
pub use tableaux::{delta_character, enumerate_sstd, tableau_degree, GradedCharacter, Mode, Tableau};
pub use tensor::{factor_check, FactorReport, FactoredContext};
pub use terrain::{decorate, latticed_paths, nested_decomposition_number, terrain_of, well_nested_families, DecoratedTerrain, Terrain};
