#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpdcalc {

// One entry of a verification suite: a named check of a single algebraic law,
// with a symbolic witness when it fails.
struct Check {
  std::string id;       // stable machine identifier, e.g. "koszul-oracle-agreement"
  std::string law;      // one-line statement of the law being checked
  bool passed = false;
  std::string witness;  // inputs and nonzero residual, canonical text
};

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;
  double elapsed_ms = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  void add(std::string id, std::string law, bool ok, std::string witness = "") {
    checks.push_back({std::move(id), std::move(law), ok, std::move(witness)});
  }

  void merge(const VerificationReport& other) {
    for (const auto& c : other.checks) checks.push_back(c);
  }

  // Line-oriented stable schema. Lines starting with '#' (the timing line)
  // are excluded from byte-for-byte report comparisons.
  void render_text(std::ostream& os, bool include_timing = true) const {
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
      os << "check " << c.id << " status=" << (c.passed ? "pass" : "fail") << " law=\""
         << c.law << "\"";
      if (!c.passed && !c.witness.empty()) os << " witness=\"" << escape(c.witness) << "\"";
      os << "\n";
    }
    os << "result " << (passed() ? "pass" : "fail") << " checks=" << checks.size() << "\n";
    if (include_timing) os << "# elapsed_ms=" << static_cast<long long>(elapsed_ms) << "\n";
  }

  void render_json(std::ostream& os, bool include_timing = true) const {
    os << "{\"suite\":\"" << escape(suite) << "\",\"status\":\""
       << (passed() ? "pass" : "fail") << "\",\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const auto& c = checks[i];
      if (i) os << ",";
      os << "{\"check_id\":\"" << escape(c.id) << "\",\"law\":\"" << escape(c.law)
         << "\",\"status\":\"" << (c.passed ? "pass" : "fail") << "\"";
      if (!c.passed && !c.witness.empty()) os << ",\"witness\":\"" << escape(c.witness) << "\"";
      os << "}";
    }
    os << "]";
    if (include_timing) os << ",\"elapsed_ms\":" << static_cast<long long>(elapsed_ms);
    os << "}\n";
  }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      if (ch == '\n') {
        out += "\\n";
        continue;
      }
      out += ch;
    }
    return out;
  }
};

}  // namespace gpdcalc
