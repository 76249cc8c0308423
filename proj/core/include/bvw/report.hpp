#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bvw {

using Json = nlohmann::json;

enum class Status { Pass, Fail, Skipped, NotEvaluable, Vacuous };

std::string_view to_string(Status s);

struct CheckEntry {
  std::string name;
  Status status = Status::Pass;
  std::uint64_t checked = 0;
  Json witness;
  std::string note;

  Json to_json() const;
};

// Ordered list of named checks. A report passes when no entry failed.
class Report {
 public:
  Report() = default;
  explicit Report(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<CheckEntry>& entries() const { return entries_; }

  CheckEntry& add(CheckEntry e);
  CheckEntry& pass(std::string name, std::uint64_t checked, std::string note = {});
  CheckEntry& fail(std::string name, std::uint64_t checked, Json witness, std::string note = {});
  CheckEntry& mark(std::string name, Status status, std::string note);
  // Copies entries of another report, prefixing their names.
  void append(const Report& other, std::string_view prefix = {});

  bool passed() const;
  std::vector<const CheckEntry*> violations() const;
  const CheckEntry* find(std::string_view name) const;
  Status status_of(std::string_view name) const;

  Json to_json() const;

 private:
  std::string subject_;
  std::vector<CheckEntry> entries_;
};

// Counts instances of one check and keeps the first failing witness.
struct Tally {
  std::uint64_t checked = 0;
  Json witness;
  bool failed = false;

  void hit() { ++checked; }
  void miss(Json w) {
    ++checked;
    if (!failed) witness = std::move(w);
    failed = true;
  }
  void emit(Report& r, const std::string& name, const std::string& note = {}) const {
    if (failed)
      r.fail(name, checked, witness, note);
    else
      r.pass(name, checked, note);
  }
};

}  // namespace bvw
