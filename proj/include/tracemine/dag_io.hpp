#ifndef TRACEMINE_DAG_IO_HPP
#define TRACEMINE_DAG_IO_HPP

#include <iosfwd>
#include <string>

#include "tracemine/dag.hpp"

namespace tracemine {

// Text format, UTF-8 with LF line endings:
//
//   dag v=<n> e=<k>
//   vertex <id> <label-string>     (n lines, ids 0..n-1 each exactly once)
//   edge <src> <dst>               (k lines)
//
// The label string is the remainder of the vertex line and may contain
// spaces but not newlines.

void save_dag(const LabeledDag& dag, std::ostream& out);
void save_dag(const LabeledDag& dag, const std::string& path);

// Throws ParseError (with line number) on malformed input, CycleError if
// the edge set is cyclic.
LabeledDag load_dag(std::istream& in);
LabeledDag load_dag(const std::string& path);

} // namespace tracemine

#endif // TRACEMINE_DAG_IO_HPP
