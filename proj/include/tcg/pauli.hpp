#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tcg {

// Pauli operator on n qubits in the form i^phase * X^x * Z^z, with the x and z
// supports packed into 64-bit words. Commutation is the parity of the
// symplectic form popcount(x1&z2) + popcount(z1&x2); multiplication XORs the
// masks and tracks the phase exactly mod 4.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(int n);

    static PauliString z_string(int n, std::span<const int> qubits, uint8_t phase = 0);
    static PauliString x_string(int n, std::span<const int> qubits, uint8_t phase = 0);
    static PauliString single_x(int n, int qubit);

    int num_qubits() const { return n_; }
    int num_words() const { return static_cast<int>(x_.size()); }

    bool x_bit(int q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(int q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
    void set_x(int q, bool v);
    void set_z(int q, bool v);

    uint8_t phase() const { return phase_; }
    void set_phase(uint8_t p) { phase_ = p & 3; }

    const std::vector<uint64_t>& x_words() const { return x_; }
    const std::vector<uint64_t>& z_words() const { return z_; }
    std::vector<uint64_t>& x_words() { return x_; }
    std::vector<uint64_t>& z_words() { return z_; }

    bool commutes_with(const PauliString& other) const;
    bool is_identity_mask() const;
    bool same_mask(const PauliString& other) const;

    // this <- this * rhs (phase exact mod 4)
    PauliString& operator*=(const PauliString& rhs);
    friend PauliString operator*(PauliString lhs, const PauliString& rhs) {
        lhs *= rhs;
        return lhs;
    }

    // Count of Y sites (x and z both set), mod 4.
    int y_count_mod4() const;

    // A Hermitian Pauli is (-1)^s * prod of {I,X,Y,Z}; valid when
    // phase == y_count mod 2. Returns 0 or 1 for s, throws otherwise.
    int hermitian_sign_bit() const;

    // Debug form like "+XIZY..." (sign from hermitian_sign_bit).
    std::string str() const;

    bool operator==(const PauliString& o) const {
        return n_ == o.n_ && x_ == o.x_ && z_ == o.z_ && phase_ == o.phase_;
    }

  private:
    int n_ = 0;
    std::vector<uint64_t> x_, z_;
    uint8_t phase_ = 0;  // power of i, mod 4
};

}  // namespace tcg
