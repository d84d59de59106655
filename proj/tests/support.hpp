#pragma once

// Shared test helpers: temp files, deterministic random text, and the word
// list used to generate modern-Spanish-flavored fixture sentences.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "histnorm/significance.hpp"
#include "histnorm/utf8.hpp"

namespace testsupport {

inline std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("histnorm_test_" + tag);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Vocabulary rich in the characters the default degradation rules touch
// (accents, j, z, initial u) so synthetic corpora behave like the real task.
inline const std::vector<std::string>& spanish_words() {
  static const std::vector<std::string> words = {
      "un",      "una",     "después", "señor",   "tiempo",  "jardín",  "deja",
      "dijo",    "hijo",    "mujer",   "trabajo", "viejo",   "ojos",    "lejos",
      "zapato",  "razón",   "corazón", "plaza",   "luz",     "vez",     "voz",
      "cabeza",  "empezar", "también", "camino",  "mañana",  "palabra", "casa",
      "mesa",    "puerta",  "libro",   "agua",    "fuego",   "tierra",  "cielo",
      "noche",   "día",     "música",  "años",    "país",    "había",   "quería",
      "momento", "historia", "cebada",  "caballo", "remedio", "bosque",  "amigo",
      "bueno",   "grande",  "pequeño", "nunca",   "siempre", "ahora",   "entonces",
      "esto",    "eso",     "aquello", "hombre",  "gente",   "mundo",   "vida",
      "muerte",  "amor",    "verdad",  "mentira", "justo",   "joven",   "jugar",
      "bajo",    "rojo",    "azul",    "verde",   "negro",   "blanco",  "último",
      "único",   "fácil",   "difícil", "feliz",   "triste",  "usted",   "nosotros",
      "comida",  "bebida",  "ciudad",  "campo",   "iglesia", "castillo", "espada",
      "escudo",  "batalla", "paz",     "guerra",  "rey",     "reina",   "pueblo"};
  return words;
}

// Deterministic sentence sampler over the word list; roughly a third of the
// sentences get a final period and a few get an internal comma.
inline std::vector<std::string> sample_sentences(std::size_t count, std::uint64_t seed) {
  const auto& words = spanish_words();
  histnorm::SplitMix64 rng = histnorm::stream_for(seed, 17);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t len = 4 + static_cast<std::size_t>(rng.next() % 8);
    std::string sentence;
    for (std::size_t w = 0; w < len; ++w) {
      if (w > 0) sentence += (rng.uniform() < 0.08 ? ", " : " ");
      sentence += words[rng.next() % words.size()];
    }
    if (rng.uniform() < 0.35) sentence += ".";
    out.push_back(std::move(sentence));
  }
  return out;
}

}  // namespace testsupport
