mod nice;
mod treedepth;
mod treewidth;
mod vertex_cover;

pub use nice::{to_nice, NiceNode, NiceTreeDecomposition, NodeKind};
pub use treedepth::{
    dfs_forest, exact_forest, exact_treedepth, treedepth_forest, TreedepthForest, TreedepthMode,
};
pub use treewidth::{
    decomposition_from_order, elimination_width, exact_elimination_order, min_fill_order,
    tree_decomposition, TreeDecomposition, TreeDecompositionMode,
};
pub use vertex_cover::{is_vertex_cover, min_vertex_cover, VertexCoverResult};
