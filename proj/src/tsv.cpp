#include "ddinet/tsv.hpp"

#include <fstream>

#include "ddinet/common.hpp"

namespace ddinet {

void for_each_tsv_row(
    const std::string& path, bool skip_header,
    const std::function<void(std::size_t, const std::vector<std::string>&)>& fn) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && skip_header) continue;
    if (line.empty()) continue;
    fn(line_no, split(line, '\t'));
  }
}

void write_tsv(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << '\t';
      out << row[i];
    }
    out << '\n';
  }
}

}  // namespace ddinet
