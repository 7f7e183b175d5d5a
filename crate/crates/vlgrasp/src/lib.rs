//! Language-directed 6-DoF grasping on synthetic RGB-D scenes.
//!
//! The pipeline takes an aligned color/depth frame plus a natural-language
//! directive and produces one 6-DoF grasp configuration for the referred
//! object. It is organized as two stages with a point-cloud filter between
//! them:
//!
//! 1. grounding: locate the target as a 2D bounding box and mask,
//! 2. point-cloud filter: crop the depth image (none / mask-only /
//!    dilated-bbox) and back-project to an object-level cloud,
//! 3. grasp reasoning: sample candidates, score, mask-filter, select, and
//!    decode to a full pose; a geometric evaluator replaces physical trials.
//!
//! Scenes are synthetic (analytic ray casting over primitive shapes) so every
//! annotation — boxes, masks, depth, instance ids — is exact, and the
//! referring-expression engine that names targets is invertible, which gives
//! the rule-based grounder a closed-loop correctness guarantee.
//!
//! Everything is deterministic given seeds. With the `parallel` feature
//! (default) the data-parallel inner loops run on rayon; results are
//! identical to the sequential fallback.

pub mod data;
pub mod eval;
pub mod exec;
pub mod geometry;
pub mod grasp;
pub mod grounding;
pub mod pcfilter;
pub mod reg;
pub mod scene;

pub mod cli;
pub mod config;

pub use geometry::{BBox2D, CameraIntrinsics, DepthImage, Mask, PointCloud, Pose};
