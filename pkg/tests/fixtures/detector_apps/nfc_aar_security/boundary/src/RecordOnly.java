package com.example.tags;

import android.nfc.NdefRecord;

public class RecordOnly {
    NdefRecord build() {
        return NdefRecord.createApplicationRecord("com.example.tags");
    }
}
