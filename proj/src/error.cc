/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <catdual/error.hh>

using namespace catdual;

ParseError::ParseError(const std::string & message, int line) :
    Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
    _line(line)
{
}
