#ifndef QHOM_REPORT_HPP
#define QHOM_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "checker.hpp"

namespace qhom {

inline constexpr const char *tool_version = "1.0.0";
inline constexpr int report_format_version = 1;

/**
 * Ordered key-value report. Sections and keys keep insertion order, so the
 * same computation always renders the same bytes.
 */
class Report {
public:
    struct Section {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;

        Section &set(const std::string &key, std::string value) {
            for (auto &[k, v] : entries)
                if (k == key) {
                    v = std::move(value);
                    return *this;
                }
            entries.emplace_back(key, std::move(value));
            return *this;
        }
        Section &set(const std::string &key, std::size_t value) { return set(key, std::to_string(value)); }
        Section &set(const std::string &key, long value) { return set(key, std::to_string(value)); }
        Section &set(const std::string &key, int value) { return set(key, std::to_string(value)); }
        Section &set(const std::string &key, bool value) { return set(key, std::string(value ? "yes" : "no")); }
        Section &set(const std::string &key, const char *value) { return set(key, std::string(value)); }
        const std::string *get(const std::string &key) const {
            for (const auto &[k, v] : entries)
                if (k == key) return &v;
            return nullptr;
        }
    };

    explicit Report(std::string command = "") : command_(std::move(command)) {}

    void set_input_digest(std::uint64_t d) { digest_ = d; }
    std::uint64_t input_digest() const { return digest_; }
    const std::string &command() const { return command_; }

    Section &section(const std::string &name) {
        for (auto &s : sections_)
            if (s.name == name) return s;
        sections_.push_back({name, {}});
        return sections_.back();
    }
    const Section *find(const std::string &name) const {
        for (const auto &s : sections_)
            if (s.name == name) return &s;
        return nullptr;
    }
    const std::vector<Section> &sections() const { return sections_; }

    std::string digest_text() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest_));
        return std::string("fnv1a64:") + buf;
    }

    std::string human() const {
        std::ostringstream os;
        os << "qhom report v" << report_format_version << "\n";
        os << "tool: qhom " << tool_version << "\n";
        os << "command: " << command_ << "\n";
        os << "input: " << digest_text() << "\n";
        for (const auto &s : sections_) {
            os << "\n[" << s.name << "]\n";
            std::size_t w = 0;
            for (const auto &e : s.entries) w = std::max(w, e.first.size());
            for (const auto &[k, v] : s.entries) os << "  " << k << std::string(w - k.size(), ' ') << "  " << v << "\n";
        }
        return os.str();
    }

    /// One `section.key=value` per line; newlines in values are escaped.
    std::string machine() const {
        std::ostringstream os;
        os << "report.version=" << report_format_version << "\n";
        os << "report.tool=qhom " << tool_version << "\n";
        os << "report.command=" << command_ << "\n";
        os << "report.input=" << digest_text() << "\n";
        for (const auto &s : sections_) {
            std::string prefix = s.name;
            for (auto &c : prefix)
                if (c == ' ') c = '.';
            for (const auto &[k, v] : s.entries) {
                std::string val;
                for (char c : v) val += c == '\n' ? std::string("\\n") : std::string(1, c);
                os << prefix << "." << k << "=" << val << "\n";
            }
        }
        return os.str();
    }

    std::string render(bool machine_readable) const { return machine_readable ? machine() : human(); }

private:
    std::string command_;
    std::uint64_t digest_ = 0;
    std::vector<Section> sections_;
};

namespace detail {

inline std::string verdict_text(const Verdict &v) {
    std::string s = status_name(v.status);
    if (v.value) s += " value=" + (*v.value == infinite_value ? std::string("inf") : std::to_string(*v.value));
    s += " bound=" + std::to_string(v.bound);
    return s;
}

inline std::string table_text(const std::vector<std::vector<std::size_t>> &t) {
    std::string s;
    for (std::size_t j = 0; j < t.size(); ++j) s += (j ? " " : "") + std::string("(") + join(t[j]) + ")";
    return s.empty() ? "-" : s;
}

}  // namespace detail

inline void add_verdict(Report::Section &sec, const std::string &key, const Verdict &v) {
    sec.set(key, detail::verdict_text(v));
    if (!v.certificate.empty()) sec.set(key + ".certificate", v.certificate);
}

template <class S>
void add_hypothesis_report(Report &report, const std::string &name, const HypothesisReport<S> &r) {
    auto &sec = report.section("extension " + name);
    sec.set("provenance", provenance_name(r.provenance));
    sec.set("dim.ambient", r.ambient_dim);
    sec.set("dim.sub", r.sub_dim);
    sec.set("dim.quotient", r.quotient_dim);
    add_verdict(sec, "pd", r.pd.verdict);
    sec.set("pd.ranks", "(" + detail::join(r.pd.pd.ranks) + ")");
    add_verdict(sec, "nilpotency", r.nilpotency.verdict);
    sec.set("nilpotency.power_dims", "(" + detail::join(r.nilpotency.power_dims) + ")");
    add_verdict(sec, "tor", r.tor_verdict);
    if (r.tor_table) {
        sec.set("tor.range", "i<=" + std::to_string(r.tor_table->i_max) + " j<=" + std::to_string(r.tor_table->j_max));
        sec.set("tor.forward", detail::table_text(r.tor_table->forward));
        sec.set("tor.backward", detail::table_text(r.tor_table->backward));
    }
    add_verdict(sec, "split", r.split);
    add_verdict(sec, "sing_equiv", r.sing_equiv);
    add_verdict(sec, "defect_equiv", r.defect_equiv);
    if (r.bar) {
        sec.set("bar.dims", "(" + detail::join(r.bar->complex.dims) + ")");
        sec.set("bar.homology", "(" + detail::join(r.bar->homology) + ")");
        sec.set("bar.exact", r.bar->exact);
        sec.set("bar.euler", r.bar->euler);
    }
    if (r.families) {
        sec.set("families.tor_a_a", "(" + detail::join(r.families->family1) + ")");
        sec.set("families.tor_q_a", detail::table_text(r.families->family2));
        sec.set("families.tor_a_qa", detail::table_text(r.families->family3));
        sec.set("families.all_zero", r.families->all_zero);
    }
    if (r.transport) {
        sec.set("transport.checked", r.transport->checked);
        sec.set("transport.all_projective", r.transport->all);
    }
    if (r.consequences) {
        const auto &c = *r.consequences;
        sec.set("hh.ambient", "(" + detail::join(c.hh_ambient) + ")");
        sec.set("hh.sub", "(" + detail::join(c.hh_sub) + ")");
        sec.set("hh.agree", c.hh_agree);
        add_verdict(sec, "gldim.ambient", c.gldim_ambient);
        add_verdict(sec, "gldim.sub", c.gldim_sub);
        add_verdict(sec, "consequences", c.verdict);
    }
    sec.set("exit", r.exit_code());
}

}  // namespace qhom

#endif  // QHOM_REPORT_HPP
