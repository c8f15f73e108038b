#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddinet/chem/smiles.hpp"

namespace ddinet::chem {

/// Circular (Morgan-style) fingerprint: iterated neighbourhood hashing with
/// environment deduplication by bond set, folded to `n_bits` by modulo.
/// Deterministic across platforms (FNV-1a mixing, no std::hash).
std::vector<std::uint8_t> fingerprint_mol(const Mol& mol, std::size_t n_bits, int radius);

/// Parses the fragment SMILES (wildcard attachment atoms allowed) and
/// fingerprints it. Throws InputError on unparseable input.
std::vector<std::uint8_t> fingerprint(const std::string& fragment_smiles, std::size_t n_bits,
                                      int radius);

std::size_t popcount(const std::vector<std::uint8_t>& bits);

}  // namespace ddinet::chem
