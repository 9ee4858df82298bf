#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace xsdep {

/// Balanced panel: N sections observed over the same T periods.
///
/// y is N x T (row i = section i's response path); x holds one T x p design
/// per section. p counts every design column, intercept included.
struct PanelDataset {
    long n_sections = 0;   // N
    long n_periods = 0;    // T
    long n_regressors = 0; // p, 0 means no regression at all

    Eigen::MatrixXd y;               // N x T
    std::vector<Eigen::MatrixXd> x;  // N matrices, each T x p

    /// Checks shapes, T > p, and finiteness. Throws DimensionError.
    void validate() const;
};

/// Column mapping for CSV ingestion.
///
/// Header is expected to look like `unit,time,y,x1,...,xp`. Every header
/// field that is not the unit/time/y column is treated as a regressor, in
/// header order. Set add_intercept to prepend a column of ones.
struct CsvSchema {
    std::string unit_col = "unit";
    std::string time_col = "time";
    std::string y_col = "y";
    bool add_intercept = false;
};

/// Loads a balanced panel from CSV. Rows may come in any order; sections
/// are sorted by unit id and periods by time id. Unit and time ids must be
/// integers.
///
/// Throws BalanceError (listing offending units), ParseError (row/col of
/// the bad cell), DimensionError (T <= p after intercept injection).
PanelDataset load_panel_csv(const std::string& path, const CsvSchema& schema);

}  // namespace xsdep
