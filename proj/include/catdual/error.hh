/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef CATDUAL_GUARD_ERROR_HH
#define CATDUAL_GUARD_ERROR_HH 1

#include <stdexcept>
#include <string>

namespace catdual
{
    /// Base for every error the library raises. category() is the short
    /// machine-readable tag the CLI prints as `error: <category>: <detail>`.
    class Error : public std::runtime_error
    {
        public:
            using std::runtime_error::runtime_error;

            virtual auto category() const -> std::string = 0;
    };

    class ParseError : public Error
    {
        private:
            int _line;

        public:
            explicit ParseError(const std::string & message, int line = 0);

            auto line() const -> int { return _line; }
            auto category() const -> std::string override { return "parse"; }
    };

    class ValidationError : public Error
    {
        public:
            using Error::Error;
            auto category() const -> std::string override { return "validation"; }
    };

    class SignatureMismatch : public Error
    {
        public:
            using Error::Error;
            auto category() const -> std::string override { return "signature"; }
    };

    /// A configured size limit would be exceeded. The constructions here are
    /// exponential (determinization, powerset duals) so every one has a limit.
    class GuardExceeded : public Error
    {
        public:
            using Error::Error;
            auto category() const -> std::string override { return "guard"; }
    };

    /// The language contains the empty word, so the one-vertex caterpillar
    /// obstructs everything and no dual with a nonempty universe exists.
    class EmptyDual : public Error
    {
        public:
            using Error::Error;
            auto category() const -> std::string override { return "empty-dual"; }
    };
}

#endif
