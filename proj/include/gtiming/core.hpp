#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtiming/common.hpp"

#include "json.hpp"

namespace gtiming {

// =============================================================================
// Covariate machinery
// =============================================================================

/// Fields a model term may reference. `s_time` is the clock time of the
/// second-course interval (interval index times interval width) and exists
/// only on discretized person-interval rows.
enum class Field : int { l1 = 0, a1, w1, l2, a2, w2, s_time };

inline constexpr int kNumFields = 7;

const char* field_name(Field f);
std::optional<Field> field_from_name(std::string_view name);

/// Sparse bag of field values for one subject or person-interval row.
class FieldValues {
 public:
  void set(Field f, double value) {
    values_[static_cast<int>(f)] = value;
    present_[static_cast<int>(f)] = true;
  }
  std::optional<double> get(Field f) const {
    if (!present_[static_cast<int>(f)]) return std::nullopt;
    return values_[static_cast<int>(f)];
  }

 private:
  std::array<double, kNumFields> values_{};
  std::array<bool, kNumFields> present_{};
};

struct CovariateTerm {
  enum class Kind { intercept, raw, threshold };
  Kind kind = Kind::intercept;
  Field field = Field::l1;
  double cutoff = 0.0;

  /// Value of the term for one row. Throws MissingFieldError when the row
  /// lacks the referenced field.
  double eval(const FieldValues& row) const;
  std::string label() const;
};

CovariateTerm intercept();
CovariateTerm raw(Field f);
CovariateTerm threshold(Field f, double cutoff);

/// Ordered list of design-matrix columns.
struct CovariateSpec {
  std::vector<CovariateTerm> terms;

  std::size_t size() const { return terms.size(); }
  /// Fills `out` (length size()) with the design row for `row`.
  void design_row(const FieldValues& row, double* out) const;
  /// At most one intercept; throws ValidationError otherwise.
  void check() const;

  nlohmann::json to_json() const;
  static CovariateSpec from_json(const nlohmann::json& j);
};

// =============================================================================
// Subject-level data
// =============================================================================

/// Second treatment course block, present only for subjects who reached it.
struct CourseTwo {
  int l2 = 0;       // covariate at course 2
  int a2 = 0;       // treatment at course 2
  double w2 = 0.0;  // waiting time from course 2 to death/censoring, months
  int delta2 = 1;   // 1 = death observed, 0 = censored
};

/// One subject: first-course block, event type, optional second-course block.
///
/// delta1 codes the first event after course 1: 1 = second treatment,
/// 0 = death, -1 = censored. Total survival time and the uncensored-event
/// indicator are derived, never stored.
struct SubjectRecord {
  long id = 0;
  int l1 = 0;
  int a1 = 0;
  double w1 = 0.0;  // months
  int delta1 = 0;
  std::optional<CourseTwo> course2;

  /// I(delta1 != -1): an event (death or next treatment) was observed.
  bool event_observed() const { return delta1 != -1; }

  /// True when death was observed (either before or after course 2).
  bool died() const {
    return delta1 == 0 || (course2.has_value() && course2->delta2 == 1);
  }

  /// Death time when observed: w1 for pre-course-2 deaths, w1 + w2 after
  /// a completed second course. Empty when the subject was censored.
  std::optional<double> total_time() const {
    if (delta1 == 0) return w1;
    if (course2.has_value() && course2->delta2 == 1) return w1 + course2->w2;
    return std::nullopt;
  }

  /// End of observed follow-up regardless of event type.
  double follow_up() const {
    return course2.has_value() ? w1 + course2->w2 : w1;
  }

  FieldValues fields() const;
};

struct CohortMeta {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t n = 0;
};

struct CohortDataset {
  std::vector<SubjectRecord> records;
  CohortMeta meta;

  std::size_t size() const { return records.size(); }
};

/// Treatment sequence and horizon defining the target quantity
/// P(T^{a1,a2} > tau).
struct EstimandSpec {
  int a1_target = 1;
  int a2_target = 1;
  double tau = 15.0;
};

/// Survival curve over a tau grid; lo/hi empty when no intervals were
/// requested.
struct SurvivalCurveEstimate {
  std::string method;
  std::vector<double> tau;
  std::vector<double> estimate;
  std::vector<double> lo;
  std::vector<double> hi;
};

// =============================================================================
// Validation and serialization
// =============================================================================

/// Returns one message per invariant violation; empty means the dataset is
/// well formed. Violations are data, not failures.
std::vector<std::string> validate(const CohortDataset& dataset);

/// CSV schema: header `id,l1,a1,w1,delta1,l2,a2,w2,delta2`; course-2 cells
/// empty unless delta1 = 1. Floats use shortest round-trip formatting, so
/// write-then-read is the identity.
CohortDataset read_csv(const std::string& path);
CohortDataset read_csv_stream(std::istream& in, const std::string& name);
void write_csv(const CohortDataset& dataset, const std::string& path);
void write_csv_stream(const CohortDataset& dataset, std::ostream& out);

/// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double v);

}  // namespace gtiming
