#include "bvfrob/koszul.hpp"

namespace bvf {

Scalar koszul_sign(const std::vector<int>& permutation, const std::vector<int>& degrees)
{
    const std::size_t n = permutation.size();
    if (degrees.size() != n)
        throw MathError("koszul_sign: permutation and degree lists differ in length");
    std::vector<char> seen(n, 0);
    for (int p : permutation) {
        if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p])
            throw MathError("koszul_sign: not a permutation");
        seen[p] = 1;
    }
    int parity = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (permutation[i] > permutation[j])
                parity ^= (degrees[permutation[i]] & degrees[permutation[j]]) & 1;
    return sign_of(parity);
}

}  // namespace bvf
