//! PCA, least squares, hypothesis tests, and the contour analysis.

mod contour;
mod pca;
mod regression;
pub mod stats;

pub use contour::{contour_study, ContourSummary, TripletResult, MDIST_CEILING};
pub use pca::Pca;
pub use regression::{least_squares, multiple_r_squared, Fit};
pub use stats::{
    bonferroni, cityblock, mean, oneway_anova, paired_t, pearson, pearson_test, sd, sem, unpaired_t, AnovaResult,
    TestResult,
};
