#include "bvw/report.hpp"

#include "bvw/error.hpp"

namespace bvw {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::NotEvaluable: return "not_evaluable";
    case Status::Vacuous: return "vacuous";
  }
  return "unknown";
}

Json CheckEntry::to_json() const {
  Json j;
  j["name"] = name;
  j["status"] = std::string(to_string(status));
  j["checked"] = checked;
  if (!witness.is_null()) j["witness"] = witness;
  if (!note.empty()) j["note"] = note;
  return j;
}

CheckEntry& Report::add(CheckEntry e) {
  entries_.push_back(std::move(e));
  return entries_.back();
}

CheckEntry& Report::pass(std::string name, std::uint64_t checked, std::string note) {
  return add({std::move(name), checked == 0 ? Status::Vacuous : Status::Pass, checked, Json(), std::move(note)});
}

CheckEntry& Report::fail(std::string name, std::uint64_t checked, Json witness, std::string note) {
  return add({std::move(name), Status::Fail, checked, std::move(witness), std::move(note)});
}

CheckEntry& Report::mark(std::string name, Status status, std::string note) {
  return add({std::move(name), status, 0, Json(), std::move(note)});
}

void Report::append(const Report& other, std::string_view prefix) {
  for (CheckEntry e : other.entries_) {
    if (!prefix.empty()) e.name = std::string(prefix) + "." + e.name;
    entries_.push_back(std::move(e));
  }
}

bool Report::passed() const {
  for (const auto& e : entries_)
    if (e.status == Status::Fail) return false;
  return true;
}

std::vector<const CheckEntry*> Report::violations() const {
  std::vector<const CheckEntry*> out;
  for (const auto& e : entries_)
    if (e.status == Status::Fail) out.push_back(&e);
  return out;
}

const CheckEntry* Report::find(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

Status Report::status_of(std::string_view name) const {
  const CheckEntry* e = find(name);
  if (!e) throw Error(ErrorKind::InvalidArgument, "no check named " + std::string(name));
  return e->status;
}

Json Report::to_json() const {
  Json j;
  j["subject"] = subject_;
  j["status"] = passed() ? "pass" : "fail";
  Json list = Json::array();
  for (const auto& e : entries_) list.push_back(e.to_json());
  j["checks"] = std::move(list);
  return j;
}

}  // namespace bvw
