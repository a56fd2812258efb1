#include "tcg/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace tcg {

namespace {
int parity_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    uint64_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
    return std::popcount(acc) & 1;
}

int popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    int acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += std::popcount(a[i] & b[i]);
    return acc;
}
}  // namespace

PauliString::PauliString(int n) : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

PauliString PauliString::z_string(int n, std::span<const int> qubits, uint8_t phase) {
    PauliString p(n);
    for (int q : qubits) p.set_z(q, true);
    p.set_phase(phase);
    return p;
}

PauliString PauliString::x_string(int n, std::span<const int> qubits, uint8_t phase) {
    PauliString p(n);
    for (int q : qubits) p.set_x(q, true);
    p.set_phase(phase);
    return p;
}

PauliString PauliString::single_x(int n, int qubit) {
    PauliString p(n);
    p.set_x(qubit, true);
    return p;
}

void PauliString::set_x(int q, bool v) {
    uint64_t bit = uint64_t(1) << (q & 63);
    if (v)
        x_[q >> 6] |= bit;
    else
        x_[q >> 6] &= ~bit;
}

void PauliString::set_z(int q, bool v) {
    uint64_t bit = uint64_t(1) << (q & 63);
    if (v)
        z_[q >> 6] |= bit;
    else
        z_[q >> 6] &= ~bit;
}

bool PauliString::commutes_with(const PauliString& other) const {
    return ((parity_and(x_, other.z_) ^ parity_and(z_, other.x_)) & 1) == 0;
}

bool PauliString::is_identity_mask() const {
    for (size_t i = 0; i < x_.size(); ++i)
        if (x_[i] | z_[i]) return false;
    return true;
}

bool PauliString::same_mask(const PauliString& other) const {
    return x_ == other.x_ && z_ == other.z_;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
    // (i^a X^x1 Z^z1)(i^b X^x2 Z^z2): commuting Z^z1 past X^x2 costs
    // (-1)^{|z1 & x2|}.
    int sign_flips = popcount_and(z_, rhs.x_);
    phase_ = static_cast<uint8_t>((phase_ + rhs.phase_ + 2 * (sign_flips & 1)) & 3);
    for (size_t i = 0; i < x_.size(); ++i) {
        x_[i] ^= rhs.x_[i];
        z_[i] ^= rhs.z_[i];
    }
    return *this;
}

int PauliString::y_count_mod4() const {
    int acc = 0;
    for (size_t i = 0; i < x_.size(); ++i) acc += std::popcount(x_[i] & z_[i]);
    return acc & 3;
}

int PauliString::hermitian_sign_bit() const {
    int diff = (phase_ - y_count_mod4()) & 3;
    if (diff & 1) throw std::logic_error("Pauli string is not Hermitian");
    return diff >> 1;
}

std::string PauliString::str() const {
    std::string s;
    s += hermitian_sign_bit() ? '-' : '+';
    for (int q = 0; q < n_; ++q) {
        bool x = x_bit(q), z = z_bit(q);
        s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return s;
}

}  // namespace tcg
