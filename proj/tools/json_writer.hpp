#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

// Minimal JSON emitter with caller-controlled key order and fixed numeric
// formatting (12 significant digits). Reports are byte-compared across runs,
// which rules out serializers that reorder keys or choose their own float
// representation.
class JsonWriter {
public:
    JsonWriter& begin_object() { sep(); out_ << '{'; first_.push_back(true); return *this; }
    JsonWriter& end_object() { out_ << '}'; first_.pop_back(); return *this; }
    JsonWriter& begin_array() { sep(); out_ << '['; first_.push_back(true); return *this; }
    JsonWriter& end_array() { out_ << ']'; first_.pop_back(); return *this; }

    JsonWriter& key(std::string_view k) {
        sep();
        quote(k);
        out_ << ':';
        after_key_ = true;
        return *this;
    }
    JsonWriter& value(double v) {
        sep();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out_ << buf;
        return *this;
    }
    JsonWriter& value(long long v) { sep(); out_ << v; return *this; }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(size_t v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(bool v) { sep(); out_ << (v ? "true" : "false"); return *this; }
    JsonWriter& value(std::string_view s) { sep(); quote(s); return *this; }
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }

    std::string str() const { return out_.str(); }

private:
    void sep() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) out_ << ',';
            first_.back() = false;
        }
    }
    void quote(std::string_view s) {
        out_ << '"';
        for (char c : s) {
            switch (c) {
            case '"': out_ << "\\\""; break;
            case '\\': out_ << "\\\\"; break;
            case '\n': out_ << "\\n"; break;
            case '\t': out_ << "\\t"; break;
            case '\r': out_ << "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out_ << buf;
                } else {
                    out_ << c;
                }
            }
        }
        out_ << '"';
    }

    std::ostringstream out_;
    std::vector<bool> first_;
    bool after_key_ = false;
};
