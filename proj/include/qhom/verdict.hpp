#ifndef QHOM_VERDICT_HPP
#define QHOM_VERDICT_HPP

#include <cstddef>
#include <optional>
#include <string>

namespace qhom {

enum class Status { holds, fails, undetermined };

inline const char *status_name(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        default: return "undetermined";
    }
}

/// Three-valued outcome with the bound it was decided at and a re-checkable certificate.
struct Verdict {
    Status status = Status::undetermined;
    std::size_t bound = 0;
    std::optional<long> value;  ///< numeric value when meaningful; -1 encodes infinity
    std::string certificate;

    bool holds() const { return status == Status::holds; }
    bool fails() const { return status == Status::fails; }
    bool undetermined() const { return status == Status::undetermined; }

    static Verdict make(Status s, std::size_t bound, std::string cert, std::optional<long> value = std::nullopt) {
        Verdict v;
        v.status = s;
        v.bound = bound;
        v.certificate = std::move(cert);
        v.value = value;
        return v;
    }
};

/// Conjunction: fails dominates, then undetermined.
inline Status conjunction(Status a, Status b) {
    if (a == Status::fails || b == Status::fails) return Status::fails;
    if (a == Status::undetermined || b == Status::undetermined) return Status::undetermined;
    return Status::holds;
}

constexpr long infinite_value = -1;

}  // namespace qhom

#endif  // QHOM_VERDICT_HPP
