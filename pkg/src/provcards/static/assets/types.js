/** API payload types, mirroring the service's JSON responses verbatim. */
export {};
