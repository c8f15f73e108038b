#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ddinet {

/// Streams a UTF-8 tab-separated file. Calls `fn(line_no, fields)` for every
/// non-empty line; `line_no` is 1-based. Throws InputError if the file cannot
/// be opened. When `skip_header` is set the first line is dropped.
void for_each_tsv_row(const std::string& path, bool skip_header,
                      const std::function<void(std::size_t, const std::vector<std::string>&)>& fn);

/// Writes rows joined by tabs; used by the dataset synthesiser and reports.
void write_tsv(const std::string& path, const std::vector<std::vector<std::string>>& rows);

}  // namespace ddinet
